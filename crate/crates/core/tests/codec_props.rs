use knotcolor::codec::{emit_pd, parse_pd};
use knotcolor::fixtures::all;
use knotcolor::moves::scramble;
use knotcolor::{Crossing, Diagram};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(i: usize) -> Diagram {
    let list = all();
    list[i % list.len()].diagram.clone()
}

fn relabel(d: &Diagram, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (1..=d.edge_count() as u32).collect();
    perm.shuffle(&mut rng);
    let mut crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|c| Crossing::new(c.slots.map(|e| perm[e as usize - 1])))
        .collect();
    crossings.shuffle(&mut rng);
    Diagram::new(crossings, d.free_loops())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_code_ignores_labels(i in 0usize..64, seed in any::<u64>()) {
        let d = fixture(i);
        let r = relabel(&d, seed);
        prop_assert_eq!(r.canonical_code().unwrap(), d.canonical_code().unwrap());
    }

    #[test]
    fn parse_emit_round_trip(i in 0usize..64, seed in 1u64..1000, steps in 0usize..40) {
        let d = fixture(i);
        let s = scramble(&d, seed, steps, d.crossing_count() + 8).unwrap();
        let text = emit_pd(&s);
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(emit_pd(&back), text);
        prop_assert_eq!(back.canonical_code().unwrap(), s.canonical_code().unwrap());
    }
}
