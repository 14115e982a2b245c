//! Diagram constructions: mirror, sums, two-strand twist families.

use crate::diagram::{faces_of, port, Diagram};
use crate::error::{KnotError, Result};
use crate::net::{Hint, Net, Splice};

/// Ends of a local 2-strand window: the top strand runs `l1 → r1` and the
/// bottom strand `l2 → r2`, left to right; the face between them lies
/// below the top strand and above the bottom one.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Window {
    pub l1: usize,
    pub r1: usize,
    pub l2: usize,
    pub r2: usize,
}

/// The two ports of edge `e`, tail (departure) first, under the net's hints.
pub(crate) fn edge_ports(net: &Net, e: u32, d: &Diagram) -> Result<(usize, usize)> {
    let mut found = Vec::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            if x.slots[s] == e {
                found.push(port(c, s));
            }
        }
    }
    if found.len() != 2 {
        return Err(KnotError::MoveMismatch(format!("edge {e} does not exist")));
    }
    let (a, b) = (found[0], found[1]);
    match net.hint[b] {
        Hint::Strong(true) | Hint::Weak(true) => Ok((a, b)),
        _ => Ok((b, a)),
    }
}

/// Locates a face shared by edges `e1` and `e2` and returns the window
/// running across it. Edge 0 addresses a free loop, placed in that face.
pub(crate) fn window(s: &mut Splice, d: &Diagram, e1: u32, e2: u32) -> Result<Window> {
    if e1 == e2 && e1 != 0 {
        return Err(KnotError::MoveMismatch(format!("window edges coincide ({e1})")));
    }
    let (face, _) = faces_of(&s.net().partner, |_| true);
    let ports = |e: u32| -> Result<[usize; 2]> {
        let (a, b) = edge_ports(s.net(), e, d)?;
        Ok([a, b])
    };
    match (e1, e2) {
        (0, 0) => {
            let (a1, b1) = s.take_free_loop()?;
            let (a2, b2) = s.take_free_loop()?;
            Ok(Window { l1: a1, r1: b1, l2: b2, r2: a2 })
        }
        (0, e) => {
            let [p, _] = ports(e)?;
            let (a, b) = s.take_free_loop()?;
            Ok(Window { l1: a, r1: b, l2: p, r2: s.partner(p) })
        }
        (e, 0) => {
            let [p, _] = ports(e)?;
            let (a, b) = s.take_free_loop()?;
            Ok(Window { l1: s.partner(p), r1: p, l2: b, r2: a })
        }
        _ => {
            let p1s = ports(e1)?;
            let p2s = ports(e2)?;
            for &p1 in &p1s {
                for &p2 in &p2s {
                    if face[p1] == face[p2] {
                        return Ok(Window {
                            l1: s.partner(p1),
                            r1: p1,
                            l2: p2,
                            r2: s.partner(p2),
                        });
                    }
                }
            }
            Err(KnotError::MoveMismatch(format!(
                "edges {e1} and {e2} do not share a face"
            )))
        }
    }
}

/// Slot order (ccw from slot 0) for a twist crossing, in compass terms of
/// the window frame. Positive twists put the SW→NE strand under.
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

fn twist_slots(positive: bool) -> [usize; 4] {
    if positive {
        [SW, SE, NE, NW]
    } else {
        [NW, SW, SE, NE]
    }
}

/// Inserts `n` half-twists (negative `n`: mirrored twists) into a window.
/// Returns the new crossing indices, left to right.
pub(crate) fn insert_twists(s: &mut Splice, w: Window, n: i64) -> Vec<usize> {
    if n == 0 {
        s.link(w.l1, w.r1);
        s.link(w.l2, w.r2);
        return Vec::new();
    }
    let layout = twist_slots(n > 0);
    let mut slot_of = [0usize; 4];
    for (slot, &dir) in layout.iter().enumerate() {
        slot_of[dir] = slot;
    }
    let mut cs = Vec::new();
    for _ in 0..n.unsigned_abs() {
        let mut hints = [Hint::None; 4];
        for dir in [NW, SW] {
            hints[slot_of[dir]] = Hint::Weak(true);
        }
        for dir in [NE, SE] {
            hints[slot_of[dir]] = Hint::Weak(false);
        }
        cs.push(s.add_crossing(hints));
    }
    let p = |c: usize, dir: usize| port(c, slot_of[dir]);
    s.link(w.l1, p(cs[0], NW));
    s.link(w.l2, p(cs[0], SW));
    for k in 0..cs.len() - 1 {
        s.link(p(cs[k], NE), p(cs[k + 1], NW));
        s.link(p(cs[k], SE), p(cs[k + 1], SW));
    }
    let last = *cs.last().unwrap();
    s.link(p(last, NE), w.r1);
    s.link(p(last, SE), w.r2);
    cs
}

/// Swaps over and under at every crossing.
pub fn mirror(d: &Diagram) -> Result<Diagram> {
    let t = d.topology()?;
    let mut net = Net::from_diagram(d, &t);
    for c in 0..d.crossing_count() {
        net.rotate(c, 1);
    }
    Ok(net.to_diagram())
}

pub fn disjoint_union(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    a.topology()?;
    b.topology()?;
    let off = a.edge_count() as u32;
    let mut codes: Vec<[u32; 4]> = a.crossings().iter().map(|c| c.slots).collect();
    codes.extend(b.crossings().iter().map(|c| c.slots.map(|e| e + off)));
    Diagram::from_pd(&codes, a.free_loops() + b.free_loops()).checked()
}

/// Connected sum along edge `ea` of `a` and edge `eb` of `b` (orientations
/// are matched). Edge 0 on a crossing-free operand means one of its loops.
pub fn connected_sum(a: &Diagram, ea: u32, b: &Diagram, eb: u32) -> Result<Diagram> {
    let merged = |x: &Diagram, loops: usize| -> Result<Diagram> {
        // summing with a trivial loop leaves the other operand unchanged
        let loops = loops
            .checked_sub(1)
            .ok_or_else(|| KnotError::InvalidArgument("connected sum needs a component".into()))?;
        Ok(Diagram::new(x.crossings().to_vec(), x.free_loops() + loops))
    };
    if ea == 0 {
        b.topology()?;
        return merged(b, a.free_loops());
    }
    if eb == 0 {
        a.topology()?;
        return merged(a, b.free_loops());
    }
    let u = disjoint_union(a, b)?;
    let eb = eb + a.edge_count() as u32;
    let mut s = Splice::from_diagram(&u)?;
    let (t1, h1) = edge_ports(s.net(), ea, &u)?;
    let (t2, h2) = edge_ports(s.net(), eb, &u)?;
    s.link(t1, h2);
    s.link(t2, h1);
    s.finish()
}

/// Closure of `n` half-twists on two parallel strands (`n = 2` is a Hopf
/// diagram with positive crossings); negative `n` gives the mirror.
pub fn torus2(n: i64) -> Result<Diagram> {
    let mut s = Splice::new(Net {
        partner: Vec::new(),
        alive: Vec::new(),
        hint: Vec::new(),
        free_loops: 2,
    });
    let (a1, b1) = s.take_free_loop()?;
    let (a2, b2) = s.take_free_loop()?;
    insert_twists(
        &mut s,
        Window {
            l1: a1,
            r1: b1,
            l2: a2,
            r2: b2,
        },
        n,
    );
    s.finish()
}

fn empty_splice() -> Splice {
    Splice::new(Net {
        partner: Vec::new(),
        alive: Vec::new(),
        hint: Vec::new(),
        free_loops: 0,
    })
}

/// Lays the braid word out left to right over `cur`; `±i` is the positive
/// or negative crossing of positions `i - 1` and `i` (position 0 on top).
fn lay_braid(s: &mut Splice, cur: &mut [usize], word: &[i32]) -> Result<()> {
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= cur.len() {
            return Err(KnotError::InvalidArgument(format!(
                "generator {g} out of range for {} strands",
                cur.len()
            )));
        }
        let (x1, y1) = s.strand();
        let (x2, y2) = s.strand();
        let w = Window {
            l1: cur[i - 1],
            r1: x1,
            l2: cur[i],
            r2: x2,
        };
        insert_twists(s, w, if g > 0 { 1 } else { -1 });
        cur[i - 1] = y1;
        cur[i] = y2;
    }
    Ok(())
}

/// Closure of a braid on `strands` strands; every strand runs left to right.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    let mut s = empty_splice();
    let ends: Vec<(usize, usize)> = (0..strands).map(|_| s.strand()).collect();
    let mut cur: Vec<usize> = ends.iter().map(|&(_, b)| b).collect();
    lay_braid(&mut s, &mut cur, word)?;
    for (j, &(a, _)) in ends.iter().enumerate() {
        s.link(cur[j], a);
    }
    s.finish()
}

/// Plat closure: positions `2k, 2k + 1` are capped on both ends.
pub fn plat_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands % 2 != 0 {
        return Err(KnotError::InvalidArgument("plat needs an even strand count".into()));
    }
    let mut s = empty_splice();
    let mut cur = Vec::with_capacity(strands);
    for _ in 0..strands / 2 {
        let (a, b) = s.strand();
        cur.extend([a, b]);
    }
    lay_braid(&mut s, &mut cur, word)?;
    for pair in cur.chunks(2) {
        s.link(pair[0], pair[1]);
    }
    s.finish()
}

/// Two-bridge link with continued-fraction twist counts `a₁ … aₙ`, as the
/// four-plat `σ₂^a₁ σ₁^-a₂ σ₂^a₃ …` (alternating when all `aᵢ > 0`).
pub fn two_bridge(twists: &[i64]) -> Result<Diagram> {
    let mut twists = twists.to_vec();
    if twists.len() % 2 == 0 {
        // an even-length expansion ends beside a cap; [.., a] = [.., a - 1, 1]
        let last = twists.pop().unwrap();
        twists.extend([last - last.signum(), last.signum()]);
    }
    let mut word = Vec::new();
    for (k, &a) in twists.iter().enumerate() {
        let g: i32 = if k % 2 == 0 { 2 } else { -1 };
        let g = if a < 0 { -g } else { g };
        word.extend(std::iter::repeat(g).take(a.unsigned_abs() as usize));
    }
    plat_closure(4, &word)
}

/// The two-strand twist region with `n ≥ 0` positive half-twists, closed
/// by joining its ends around the sides so further twists can be inserted
/// into the region.
pub fn twist_chain(n: i64) -> Result<Diagram> {
    if n < 0 {
        return Err(KnotError::InvalidArgument(format!(
            "twist_chain needs n >= 0, got {n}"
        )));
    }
    torus2(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Orientation;

    fn trefoil() -> Diagram {
        Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0)
    }

    #[test]
    fn torus2_small_cases() {
        let o = Orientation::default();
        let hopf = torus2(2).unwrap();
        assert_eq!(hopf.crossing_count(), 2);
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.linking_number(&o).unwrap().as_integer(), Some(1));
        assert_eq!(torus2(0).unwrap(), Diagram::unlink(2));
        let t3 = torus2(3).unwrap();
        assert_eq!(t3.component_count(), 1);
        assert_eq!(t3.writhe(&o).unwrap(), 3);
        assert_eq!(torus2(-3).unwrap().writhe(&o).unwrap(), -3);
        assert_eq!(torus2(1).unwrap().component_count(), 1);
    }

    #[test]
    fn mirror_negates_writhe_and_is_an_involution() {
        let o = Orientation::default();
        let m = mirror(&trefoil()).unwrap();
        assert_eq!(m.writhe(&o).unwrap(), 3);
        let mm = mirror(&m).unwrap();
        assert_eq!(mm.canonical_code().unwrap(), trefoil().canonical_code().unwrap());
    }

    #[test]
    fn sums() {
        let u = disjoint_union(&Diagram::unlink(1), &Diagram::unlink(1)).unwrap();
        assert_eq!(u.component_count(), 2);
        let sq = connected_sum(&trefoil(), 1, &mirror(&trefoil()).unwrap(), 1).unwrap();
        assert_eq!(sq.crossing_count(), 6);
        assert_eq!(sq.component_count(), 1);
        assert_eq!(sq.writhe(&Orientation::default()).unwrap(), 0);
    }

    #[test]
    fn closures() {
        let o = Orientation::default();
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!((t.crossing_count(), t.writhe(&o).unwrap()), (3, 3));
        let b = braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        assert_eq!(b.component_count(), 3);
        assert_eq!(two_bridge(&[3]).unwrap().component_count(), 1);
        assert!(plat_closure(3, &[1]).is_err());
        assert!(braid_closure(2, &[2]).is_err());
    }
}
