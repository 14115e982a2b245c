//! Diagram rewriting: Reidemeister moves, twist moves, skein families.
//!
//! Every move is a local replacement addressed by edge labels of the
//! input diagram; edge 0 addresses a crossing-free loop.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{edge_ports, insert_twists, Window};
use crate::diagram::{faces_of, opposite, port, Diagram, EdgeId, Orientation};
use crate::error::{KnotError, Result};
use crate::net::{Hint, Splice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reidemeister {
    /// Adds a curl on an edge; `left` puts the loop left of the strand.
    R1Add { edge: EdgeId, positive: bool, left: bool },
    /// Removes the curl whose loop is `edge`.
    R1Remove { edge: EdgeId },
    /// Pushes `over` across `under` through a shared face.
    R2Add { over: EdgeId, under: EdgeId },
    /// Removes the bigon bounded by two edges.
    R2Remove { a: EdgeId, b: EdgeId },
    /// Slides a strand across the crossing opposite a triangular face
    /// (addressed by one or three of its edges).
    R3 { edges: Vec<EdgeId> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistMove {
    /// Inserts `n` positive half-twists between two parallel strands.
    NMove(i64),
    /// Replaces `p` horizontal half-twists by `q` vertical ones.
    PQ(u32, u32),
    /// Applies the `m`-th power of the positive half twist on `k` strands.
    HalfTwistPower { k: usize, m: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Reidemeister(Reidemeister),
    Twist { mv: TwistMove, edges: Vec<EdgeId> },
}

fn mismatch(msg: impl Into<String>) -> KnotError {
    KnotError::MoveMismatch(msg.into())
}

fn edge_at(d: &Diagram, p: usize) -> EdgeId {
    d.crossings()[p / 4].slots[p % 4]
}

/// Ports of each face in boundary order.
fn face_ports(partner: &[usize]) -> Vec<Vec<usize>> {
    let (face, count) = faces_of(partner, |_| true);
    let mut out = vec![Vec::new(); count];
    for start in 0..partner.len() {
        if out[face[start]].is_empty() {
            let mut p = start;
            loop {
                out[face[start]].push(p);
                p = partner[crate::diagram::ccw_next(p)];
                if p == start {
                    break;
                }
            }
        }
    }
    out
}

pub fn apply_reidemeister(d: &Diagram, mv: &Reidemeister) -> Result<Diagram> {
    let mut s = Splice::from_diagram(d)?;
    match *mv {
        Reidemeister::R1Add {
            edge,
            positive,
            left,
        } => {
            let (tail, head) = if edge == 0 {
                s.take_free_loop()?
            } else {
                edge_ports(s.net(), edge, d)?
            };
            add_curl(&mut s, tail, head, positive, left);
        }
        Reidemeister::R1Remove { edge } => {
            let (a, b) = edge_ports(s.net(), edge, d)?;
            if a / 4 != b / 4 {
                return Err(mismatch(format!("edge {edge} is not a curl")));
            }
            s.kill(a / 4, [(0, 2), (1, 3)]);
        }
        Reidemeister::R2Add { over, under } => {
            let w = crate::construct::window(&mut s, d, over, under)?;
            add_bigon(&mut s, w);
        }
        Reidemeister::R2Remove { a, b } => {
            let (x, y) = bigon_crossings(d, &s, a, b)?;
            s.kill(x, [(0, 2), (1, 3)]);
            s.kill(y, [(0, 2), (1, 3)]);
        }
        Reidemeister::R3 { ref edges } => {
            let tri = r3_triangle(d, &s, edges)?;
            let partner = s.net().partner.clone();
            for &(x_in, y_in) in &tri {
                let (x_out, y_out) = (opposite(x_in), opposite(y_in));
                let (p, q) = (partner[x_out], partner[y_out]);
                s.link(x_in, q);
                s.link(y_in, p);
                s.link(x_out, y_out);
            }
        }
    }
    s.finish()
}

// compass slots for a new crossing
const E: usize = 0;
const N: usize = 1;
const W: usize = 2;
const S: usize = 3;

fn add_curl(s: &mut Splice, tail: usize, head: usize, positive: bool, left: bool) {
    // strand enters from the west; the loop sits north-east (left) or
    // south-east (right) of the crossing
    let layout = match (left, positive) {
        (true, true) => [W, S, E, N],
        (true, false) => [N, W, S, E],
        (false, true) => [S, E, N, W],
        (false, false) => [W, S, E, N],
    };
    let (back_in, exit) = if left { (N, S) } else { (S, N) };
    let mut slot = [0; 4];
    for (k, &dir) in layout.iter().enumerate() {
        slot[dir] = k;
    }
    let mut hints = [Hint::None; 4];
    hints[slot[W]] = Hint::Strong(true);
    hints[slot[E]] = Hint::Strong(false);
    hints[slot[back_in]] = Hint::Strong(true);
    hints[slot[exit]] = Hint::Strong(false);
    let c = s.add_crossing(hints);
    s.link(tail, port(c, slot[W]));
    s.link(port(c, slot[E]), port(c, slot[back_in]));
    s.link(port(c, slot[exit]), head);
}

fn flows_right(s: &Splice, left_end: usize) -> bool {
    // a left end that is a departure port sends the strand rightwards
    match left_end_hint(s, left_end) {
        Some(arrives) => !arrives,
        None => true,
    }
}

fn left_end_hint(s: &Splice, p: usize) -> Option<bool> {
    if p >= s.net().partner.len() {
        return None;
    }
    match s.hint(p) {
        Hint::Strong(b) | Hint::Weak(b) => Some(b),
        Hint::None => None,
    }
}

fn add_bigon(s: &mut Splice, w: Window) {
    // the top strand is pushed down across the bottom one, creating
    // crossings X (left) and Y (right)
    let layout = [W, S, E, N]; // under = bottom strand (W-E), over = top (N-S)
    let mut slot = [0; 4];
    for (k, &dir) in layout.iter().enumerate() {
        slot[dir] = k;
    }
    let top_right = flows_right(s, w.l1);
    let bottom_right = flows_right(s, w.l2);
    let mut hx = [Hint::None; 4];
    let mut hy = [Hint::None; 4];
    // X: N from l1, S toward Y; W from l2, E toward Y
    hx[slot[N]] = Hint::Strong(top_right);
    hx[slot[S]] = Hint::Strong(!top_right);
    hx[slot[W]] = Hint::Strong(bottom_right);
    hx[slot[E]] = Hint::Strong(!bottom_right);
    // Y: S from X, N toward r1; W from X, E toward r2
    hy[slot[S]] = Hint::Strong(top_right);
    hy[slot[N]] = Hint::Strong(!top_right);
    hy[slot[W]] = Hint::Strong(bottom_right);
    hy[slot[E]] = Hint::Strong(!bottom_right);
    let x = s.add_crossing(hx);
    let y = s.add_crossing(hy);
    s.link(w.l1, port(x, slot[N]));
    s.link(port(x, slot[S]), port(y, slot[S]));
    s.link(port(y, slot[N]), w.r1);
    s.link(w.l2, port(x, slot[W]));
    s.link(port(x, slot[E]), port(y, slot[W]));
    s.link(port(y, slot[E]), w.r2);
}

fn bigon_crossings(d: &Diagram, s: &Splice, a: EdgeId, b: EdgeId) -> Result<(usize, usize)> {
    let partner = &s.net().partner;
    for f in face_ports(partner) {
        if f.len() != 2 {
            continue;
        }
        let (p0, p1) = (f[0], f[1]);
        let mut es = [edge_at(d, p0), edge_at(d, p1)];
        es.sort_unstable();
        let mut want = [a, b];
        want.sort_unstable();
        if es != want {
            continue;
        }
        let (x, y) = (p0 / 4, p1 / 4);
        if x == y {
            return Err(mismatch("bigon closes on a single crossing"));
        }
        // strand of the edge arriving at p0 has ports p0 (at X) and partner[p0] (at Y)
        let q = partner[p0];
        if p0 % 2 != q % 2 {
            return Err(mismatch(format!(
                "bigon on edges {a}, {b} alternates over and under"
            )));
        }
        return Ok((x, y));
    }
    Err(mismatch(format!("edges {a}, {b} do not bound a bigon")))
}

/// Triangle edges as (port at one corner, port at the next corner) pairs.
fn r3_triangle(d: &Diagram, s: &Splice, edges: &[EdgeId]) -> Result<Vec<(usize, usize)>> {
    if edges.len() != 1 && edges.len() != 3 {
        return Err(mismatch("r3 takes one or three edges"));
    }
    let partner = &s.net().partner;
    let mut problem = None;
    for f in face_ports(partner) {
        if f.len() != 3 {
            continue;
        }
        let tri_edges: Vec<EdgeId> = f.iter().map(|&p| edge_at(d, p)).collect();
        if !edges.iter().all(|e| tri_edges.contains(e)) {
            continue;
        }
        let corners: Vec<usize> = f.iter().map(|&p| p / 4).collect();
        if corners[0] == corners[1] || corners[1] == corners[2] || corners[0] == corners[2] {
            problem = Some("triangle repeats a crossing");
            continue;
        }
        let pairs: Vec<(usize, usize)> = f.iter().map(|&p| (partner[p], p)).collect();
        if !pairs.iter().any(|&(x, y)| x % 2 == y % 2) {
            problem = Some("triangle is cyclic (no strand passes over or under both others)");
            continue;
        }
        let tri: std::collections::HashSet<usize> = corners.iter().copied().collect();
        let external_ok = pairs.iter().all(|&(x, y)| {
            !tri.contains(&(partner[opposite(x)] / 4)) && !tri.contains(&(partner[opposite(y)] / 4))
        });
        if !external_ok {
            problem = Some("triangle crossings are joined outside the triangle");
            continue;
        }
        return Ok(pairs);
    }
    Err(mismatch(format!(
        "no movable triangle on edges {edges:?}{}",
        problem.map(|p| format!(": {p}")).unwrap_or_default()
    )))
}

/// Applies R1 and R2 removals greedily until none is left.
pub fn simplify(d: &Diagram) -> Result<Diagram> {
    let mut cur = d.clone();
    loop {
        let t = cur.topology()?;
        let mut mv = None;
        'curl: for c in 0..cur.crossing_count() {
            for s in 0..4 {
                if t.partner[port(c, s)] / 4 == c {
                    mv = Some(Reidemeister::R1Remove {
                        edge: edge_at(&cur, port(c, s)),
                    });
                    break 'curl;
                }
            }
        }
        if mv.is_none() {
            mv = face_ports(&t.partner)
                .into_iter()
                .find(|f| {
                    f.len() == 2 && f[0] / 4 != f[1] / 4 && f[0] % 2 == t.partner[f[0]] % 2
                })
                .map(|f| Reidemeister::R2Remove {
                    a: edge_at(&cur, f[0]),
                    b: edge_at(&cur, f[1]),
                });
        }
        match mv {
            Some(m) => cur = apply_reidemeister(&cur, &m)?,
            None => return Ok(cur),
        }
    }
}

/// All Reidemeister moves applicable to `d`, in a deterministic order.
pub fn applicable_moves(d: &Diagram) -> Result<Vec<Reidemeister>> {
    let t = d.topology()?;
    let mut out = Vec::new();
    let edges: Vec<EdgeId> = (1..=d.edge_count() as EdgeId).collect();
    let mut curl_sites: Vec<EdgeId> = edges.clone();
    if d.free_loops() > 0 {
        curl_sites.insert(0, 0);
    }
    for &e in &curl_sites {
        for positive in [true, false] {
            for left in [true, false] {
                out.push(Reidemeister::R1Add { edge: e, positive, left });
            }
        }
    }
    for c in 0..d.crossing_count() {
        for s in 0..4 {
            let p = port(c, s);
            let q = t.partner[p];
            if q / 4 == c && p < q {
                out.push(Reidemeister::R1Remove { edge: edge_at(d, p) });
            }
        }
    }
    let faces = face_ports(&t.partner);
    let mut pairs = std::collections::BTreeSet::new();
    for f in &faces {
        for i in 0..f.len() {
            for j in 0..f.len() {
                let (a, b) = (edge_at(d, f[i]), edge_at(d, f[j]));
                if a != b {
                    pairs.insert((a, b));
                }
            }
        }
    }
    if d.free_loops() > 0 {
        for &e in &edges {
            pairs.insert((0, e));
            pairs.insert((e, 0));
        }
        if d.free_loops() > 1 || d.crossing_count() == 0 {
            pairs.insert((0, 0));
        }
    }
    for (a, b) in pairs {
        if a == 0 && b == 0 && d.free_loops() < 2 {
            continue;
        }
        out.push(Reidemeister::R2Add { over: a, under: b });
    }
    for f in &faces {
        if f.len() == 2 && f[0] / 4 != f[1] / 4 && f[0] % 2 == t.partner[f[0]] % 2 {
            out.push(Reidemeister::R2Remove {
                a: edge_at(d, f[0]),
                b: edge_at(d, f[1]),
            });
        }
        if f.len() == 3 {
            let mv = Reidemeister::R3 {
                edges: f.iter().map(|&p| edge_at(d, p)).collect(),
            };
            let s = Splice::from_diagram(d)?;
            if r3_triangle(d, &s, match &mv {
                Reidemeister::R3 { edges } => edges,
                _ => unreachable!(),
            })
            .is_ok()
            {
                out.push(mv);
            }
        }
    }
    Ok(out)
}

fn crossing_delta(mv: &Reidemeister) -> i64 {
    match mv {
        Reidemeister::R1Add { .. } => 1,
        Reidemeister::R1Remove { .. } => -1,
        Reidemeister::R2Add { .. } => 2,
        Reidemeister::R2Remove { .. } => -2,
        Reidemeister::R3 { .. } => 0,
    }
}

fn kind_of(mv: &Reidemeister) -> usize {
    match mv {
        Reidemeister::R1Add { .. } => 0,
        Reidemeister::R1Remove { .. } => 1,
        Reidemeister::R2Add { .. } => 2,
        Reidemeister::R2Remove { .. } => 3,
        Reidemeister::R3 { .. } => 4,
    }
}

/// Applies `steps` random Reidemeister moves, deterministically from `seed`,
/// keeping at most `max_crossings` crossings. Each step first draws a move
/// kind among those with an applicable site, then a site of that kind.
pub fn scramble(d: &Diagram, seed: u64, steps: usize, max_crossings: usize) -> Result<Diagram> {
    if d.crossing_count() > max_crossings {
        return Err(KnotError::InvalidArgument(format!(
            "diagram has {} crossings, above the cap {max_crossings}",
            d.crossing_count()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    for _ in 0..steps {
        let n = cur.crossing_count() as i64;
        let moves: Vec<Reidemeister> = applicable_moves(&cur)?
            .into_iter()
            .filter(|m| n + crossing_delta(m) <= max_crossings as i64)
            .collect();
        let mut by_kind: Vec<Vec<&Reidemeister>> = vec![Vec::new(); 5];
        for m in &moves {
            by_kind[kind_of(m)].push(m);
        }
        let kinds: Vec<usize> = (0..5).filter(|&k| !by_kind[k].is_empty()).collect();
        let Some(&kind) = kinds.choose(&mut rng) else {
            continue;
        };
        let pick = by_kind[kind][rng.gen_range(0..by_kind[kind].len())];
        cur = apply_reidemeister(&cur, pick)?;
    }
    Ok(cur)
}

/// Candidate 2-strand windows: ordered edge pairs sharing a face.
pub fn window_sites(d: &Diagram) -> Result<Vec<(EdgeId, EdgeId)>> {
    let t = d.topology()?;
    let mut pairs = std::collections::BTreeSet::new();
    for f in face_ports(&t.partner) {
        for &p in &f {
            for &q in &f {
                let (a, b) = (edge_at(d, p), edge_at(d, q));
                if a != b {
                    pairs.insert((a, b));
                }
            }
        }
    }
    Ok(pairs.into_iter().collect())
}

/// All windows between two edges (each shared face, both frame rotations).
fn windows_between(s: &Splice, d: &Diagram, e1: EdgeId, e2: EdgeId) -> Result<Vec<Window>> {
    let (face, _) = faces_of(&s.net().partner, |_| true);
    let (a1, b1) = edge_ports(s.net(), e1, d)?;
    let (a2, b2) = edge_ports(s.net(), e2, d)?;
    let mut out = Vec::new();
    for p1 in [a1, b1] {
        for p2 in [a2, b2] {
            if face[p1] == face[p2] {
                let w = Window {
                    l1: s.partner(p1),
                    r1: p1,
                    l2: p2,
                    r2: s.partner(p2),
                };
                out.push(w);
                // the same window seen upside down
                out.push(Window {
                    l1: w.r2,
                    r1: w.l2,
                    l2: w.r1,
                    r2: w.l1,
                });
            }
        }
    }
    Ok(out)
}

/// Ordered chain of `k` parallel strands for a k-strand window.
fn strand_window(s: &Splice, d: &Diagram, edges: &[EdgeId]) -> Result<Vec<(usize, usize)>> {
    let (face, _) = faces_of(&s.net().partner, |_| true);
    let ports = |e: EdgeId| edge_ports(s.net(), e, d);
    let (a, b) = ports(edges[0])?;
    'first: for r in [a, b] {
        let mut chain = vec![(s.partner(r), r)];
        for &e in &edges[1..] {
            let f = face[chain.last().unwrap().1];
            let (x, y) = ports(e)?;
            let Some(p) = [x, y].into_iter().find(|&p| face[p] == f) else {
                continue 'first;
            };
            chain.push((p, s.partner(p)));
        }
        return Ok(chain);
    }
    Err(mismatch(format!("edges {edges:?} are not parallel strands")))
}

/// Checks that `p` half-twists (one sign) start at the right end of `w`;
/// returns their crossings and the window around them.
fn twist_run(s: &Splice, w: Window, p: u32) -> Option<(Vec<usize>, Window, bool)> {
    let partner = &s.net().partner;
    let (mut nw, mut sw) = (w.r1, w.r2);
    let mut run = Vec::new();
    let mut sign = None;
    for _ in 0..p {
        if nw >= partner.len() || nw / 4 != sw / 4 || sw % 4 != (nw + 1) % 4 {
            return None;
        }
        let positive = nw % 2 == 1;
        if *sign.get_or_insert(positive) != positive {
            return None;
        }
        if run.contains(&(nw / 4)) {
            return None;
        }
        run.push(nw / 4);
        let (ne, se) = (opposite(sw), opposite(nw));
        let (next_nw, next_sw) = (partner[ne], partner[se]);
        if run.len() as u32 == p {
            let out = Window {
                l1: w.l1,
                r1: next_nw,
                l2: w.l2,
                r2: next_sw,
            };
            return Some((run, out, positive));
        }
        nw = next_nw;
        sw = next_sw;
    }
    None
}

pub fn apply_twist_move(d: &Diagram, edges: &[EdgeId], mv: TwistMove) -> Result<Diagram> {
    let mut s = Splice::from_diagram(d)?;
    match mv {
        TwistMove::NMove(n) => {
            if edges.len() != 2 {
                return Err(mismatch("an n-move window takes two edges"));
            }
            let w = crate::construct::window(&mut s, d, edges[0], edges[1])?;
            insert_twists(&mut s, w, n);
        }
        TwistMove::PQ(p, q) => {
            if edges.len() != 2 || edges.contains(&0) {
                return Err(mismatch("a [p,q]-move window takes two edges"));
            }
            let found = windows_between(&s, d, edges[0], edges[1])?
                .into_iter()
                .find_map(|w| twist_run(&s, w, p));
            let Some((run, w, positive)) = found else {
                return Err(mismatch(format!(
                    "edges {edges:?} do not lead into {p} half-twists"
                )));
            };
            for c in run {
                s.remove(c);
            }
            // vertical twists: the window turned a quarter turn
            let turned = Window {
                l1: w.l2,
                r1: w.l1,
                l2: w.r2,
                r2: w.r1,
            };
            let q = if positive { q as i64 } else { -(q as i64) };
            insert_twists(&mut s, turned, q);
        }
        TwistMove::HalfTwistPower { k, m } => {
            if k < 2 {
                return Err(KnotError::InvalidArgument(format!(
                    "half twist needs k >= 2, got {k}"
                )));
            }
            if edges.len() != k || edges.contains(&0) {
                return Err(mismatch(format!("a {k}-strand window takes {k} edges")));
            }
            let chain = strand_window(&s, d, edges)?;
            insert_half_twists(&mut s, &chain, m);
        }
    }
    s.finish()
}

fn insert_half_twists(s: &mut Splice, chain: &[(usize, usize)], m: i64) {
    let k = chain.len();
    let mut cur: Vec<usize> = chain.iter().map(|&(l, _)| l).collect();
    let positive = m > 0;
    let layout: [usize; 4] = if positive { [2, 3, 0, 1] } else { [1, 2, 3, 0] };
    // compass in twist frame: NE=0, NW=1, SW=2, SE=3
    let mut slot = [0; 4];
    for (i, &dir) in layout.iter().enumerate() {
        slot[dir] = i;
    }
    for _ in 0..m.unsigned_abs() {
        for top in (1..k).rev() {
            for j in 0..top {
                let mut hints = [Hint::None; 4];
                hints[slot[1]] = Hint::Weak(true);
                hints[slot[2]] = Hint::Weak(true);
                hints[slot[0]] = Hint::Weak(false);
                hints[slot[3]] = Hint::Weak(false);
                let c = s.add_crossing(hints);
                s.link(cur[j], port(c, slot[1]));
                s.link(cur[j + 1], port(c, slot[2]));
                cur[j] = port(c, slot[0]);
                cur[j + 1] = port(c, slot[3]);
            }
        }
    }
    for (i, &(_, r)) in chain.iter().enumerate() {
        s.link(cur[i], r);
    }
}

/// Which replacement to put in a crossing's window; the window frame makes
/// the existing crossing a positive half-twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Twists(i64),
    /// The smoothing joining the window's parallel strands (`Twists(0)`).
    Horizontal,
    /// The other smoothing.
    Vertical,
    /// Over/under exchanged, orientation kept.
    Switch,
    /// The smoothing compatible with the diagram's orientation.
    Oriented,
}

/// Opens crossing `c` into a window in whose frame it was a positive twist.
fn open_window(s: &mut Splice, c: usize) -> Window {
    let [sw, se, ne, nw] = s.detach(c);
    Window {
        l1: nw,
        r1: ne,
        l2: sw,
        r2: se,
    }
}

pub fn resolve(d: &Diagram, crossing: usize, r: Resolution) -> Result<Diagram> {
    if crossing >= d.crossing_count() {
        return Err(KnotError::InvalidArgument(format!(
            "crossing {crossing} does not exist"
        )));
    }
    let mut s = Splice::from_diagram(d)?;
    let c = crossing;
    let r = match r {
        Resolution::Oriented => {
            let t = d.topology()?;
            if t.sign(c, &Orientation::default()) > 0 {
                Resolution::Horizontal
            } else {
                Resolution::Vertical
            }
        }
        other => other,
    };
    match r {
        Resolution::Switch => {
            let mut net = s.net().clone();
            net.rotate(c, 1);
            return Ok(net.to_diagram());
        }
        Resolution::Twists(n) => {
            let w = open_window(&mut s, c);
            insert_twists(&mut s, w, n);
        }
        Resolution::Horizontal => {
            let w = open_window(&mut s, c);
            s.link(w.l1, w.r1);
            s.link(w.l2, w.r2);
        }
        Resolution::Vertical => {
            let w = open_window(&mut s, c);
            s.link(w.l1, w.l2);
            s.link(w.r1, w.r2);
        }
        Resolution::Oriented => unreachable!(),
    }
    s.finish()
}

/// Skein family at a crossing: `(L+, L-, L0, L∞)` or the n-ary
/// `(L0, ..., L_{n-1}, L∞)`.
#[derive(Clone, Debug)]
pub struct SkeinFamily {
    pub members: Vec<Diagram>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Four,
    NAry(u32),
}

pub fn skein_family(d: &Diagram, crossing: usize, arity: Arity) -> Result<SkeinFamily> {
    let members = match arity {
        Arity::Four => vec![
            resolve(d, crossing, Resolution::Twists(1))?,
            resolve(d, crossing, Resolution::Twists(-1))?,
            resolve(d, crossing, Resolution::Horizontal)?,
            resolve(d, crossing, Resolution::Vertical)?,
        ],
        Arity::NAry(n) => {
            if n < 2 {
                return Err(KnotError::InvalidArgument("n-ary family needs n >= 2".into()));
            }
            let mut v = Vec::new();
            for i in 0..n as i64 {
                v.push(resolve(d, crossing, Resolution::Twists(i))?);
            }
            v.push(resolve(d, crossing, Resolution::Vertical)?);
            v
        }
    };
    Ok(SkeinFamily { members })
}

pub fn apply_move(d: &Diagram, mv: &Move) -> Result<Diagram> {
    match mv {
        Move::Reidemeister(r) => apply_reidemeister(d, r),
        Move::Twist { mv, edges } => apply_twist_move(d, edges, *mv),
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es = |v: &[EdgeId]| {
            v.iter()
                .map(|e| format!("e{e}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Move::Reidemeister(Reidemeister::R1Add {
                edge,
                positive,
                left,
            }) => write!(
                f,
                "r1+ e{edge} {} {}",
                if *positive { "pos" } else { "neg" },
                if *left { "left" } else { "right" }
            ),
            Move::Reidemeister(Reidemeister::R1Remove { edge }) => write!(f, "r1- e{edge}"),
            Move::Reidemeister(Reidemeister::R2Add { over, under }) => {
                write!(f, "r2+ e{over} e{under}")
            }
            Move::Reidemeister(Reidemeister::R2Remove { a, b }) => write!(f, "r2- e{a} e{b}"),
            Move::Reidemeister(Reidemeister::R3 { edges }) => write!(f, "r3 {}", es(edges)),
            Move::Twist { mv, edges } => match mv {
                TwistMove::NMove(n) => write!(f, "nmove {n} {}", es(edges)),
                TwistMove::PQ(p, q) => write!(f, "pq {p} {q} {}", es(edges)),
                TwistMove::HalfTwistPower { k, m } => write!(f, "twist {k} {m} {}", es(edges)),
            },
        }
    }
}

fn parse_edge(tok: &str) -> Result<EdgeId> {
    tok.strip_prefix('e')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| KnotError::InvalidArgument(format!("expected an edge like e3, got {tok:?}")))
}

fn parse_int<T: std::str::FromStr>(tok: Option<&&str>, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| KnotError::InvalidArgument(format!("missing or bad {what}")))
}

/// Parses one move-log line (`r1+ e1`, `nmove 2 e1 e2`, `r3 e9`, ...).
pub fn parse_move(line: &str) -> Result<Move> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let Some((&head, rest)) = toks.split_first() else {
        return Err(KnotError::InvalidArgument("empty move".into()));
    };
    let edges_from = |ts: &[&str]| -> Result<Vec<EdgeId>> {
        ts.iter().filter(|t| t.starts_with('e')).map(|t| parse_edge(t)).collect()
    };
    let r = |m: Reidemeister| Ok(Move::Reidemeister(m));
    match head {
        "r1+" => {
            let edge = parse_edge(rest.first().copied().unwrap_or(""))?;
            let positive = !rest.contains(&"neg");
            let left = !rest.contains(&"right");
            r(Reidemeister::R1Add { edge, positive, left })
        }
        "r1-" => r(Reidemeister::R1Remove {
            edge: parse_edge(rest.first().copied().unwrap_or(""))?,
        }),
        "r2+" | "r2-" => {
            let es = edges_from(rest)?;
            if es.len() != 2 {
                return Err(KnotError::InvalidArgument(format!("{head} takes two edges")));
            }
            if head == "r2+" {
                if rest.contains(&"under") {
                    r(Reidemeister::R2Add { over: es[1], under: es[0] })
                } else {
                    r(Reidemeister::R2Add { over: es[0], under: es[1] })
                }
            } else {
                r(Reidemeister::R2Remove { a: es[0], b: es[1] })
            }
        }
        "r3" => r(Reidemeister::R3 {
            edges: edges_from(rest)?,
        }),
        "nmove" => Ok(Move::Twist {
            mv: TwistMove::NMove(parse_int(rest.first(), "twist count")?),
            edges: edges_from(&rest[1.min(rest.len())..])?,
        }),
        "pq" => Ok(Move::Twist {
            mv: TwistMove::PQ(parse_int(rest.first(), "p")?, parse_int(rest.get(1), "q")?),
            edges: edges_from(&rest[2.min(rest.len())..])?,
        }),
        "twist" => Ok(Move::Twist {
            mv: TwistMove::HalfTwistPower {
                k: parse_int(rest.first(), "strand count")?,
                m: parse_int(rest.get(1), "power")?,
            },
            edges: edges_from(&rest[2.min(rest.len())..])?,
        }),
        other => Err(KnotError::InvalidArgument(format!("unknown move {other:?}"))),
    }
}

/// Parses a move log; blank lines and `#` comments are skipped. Returns
/// (1-based line number, move).
pub fn parse_move_log(text: &str) -> Result<Vec<(usize, Move)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mv = parse_move(line).map_err(|e| KnotError::Syntax {
            offset: i + 1,
            message: format!("line {}: {e}", i + 1),
        })?;
        out.push((i + 1, mv));
    }
    Ok(out)
}
