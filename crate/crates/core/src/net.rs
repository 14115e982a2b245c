//! Mutable port-wiring used by every diagram rewrite.
//!
//! A rewrite starts from a [`Net`], kills crossings, adds new ones, and
//! relinks ports through a [`Splice`]; `finish` collapses chains through
//! dead crossings and strand pieces, counts closed loops, then re-derives
//! slot order and edge labels so the result is a valid [`Diagram`].

use std::collections::{HashMap, HashSet};

use crate::diagram::{opposite, orbit, pieces, port, Crossing, Diagram, Topology};
use crate::error::{KnotError, Result};

/// Direction hint for a port: `true` means the strand arrives there.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Hint {
    None,
    Weak(bool),
    Strong(bool),
}

impl Hint {
    fn vote(self, arriving: bool) -> i64 {
        match self {
            Hint::None => 0,
            Hint::Weak(b) => {
                if b == arriving {
                    1
                } else {
                    -1
                }
            }
            Hint::Strong(b) => {
                if b == arriving {
                    1000
                } else {
                    -1000
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Net {
    pub partner: Vec<usize>,
    pub alive: Vec<bool>,
    pub hint: Vec<Hint>,
    pub free_loops: usize,
}

impl Net {
    pub fn from_diagram(d: &Diagram, t: &Topology) -> Net {
        Net {
            partner: t.partner.clone(),
            alive: vec![true; d.crossing_count()],
            hint: t.arrival.iter().map(|&a| Hint::Strong(a)).collect(),
            free_loops: d.free_loops(),
        }
    }

    /// Rotates crossing `c` so that new slot `s` is old slot `s + k`.
    /// Odd `k` exchanges over and under.
    pub fn rotate(&mut self, c: usize, k: usize) {
        let old_ports: Vec<usize> = (0..4).map(|s| port(c, s)).collect();
        let old_partner: Vec<usize> = old_ports.iter().map(|&p| self.partner[p]).collect();
        let old_hint: Vec<Hint> = old_ports.iter().map(|&p| self.hint[p]).collect();
        for s in 0..4 {
            let from = (s + k) % 4;
            let q = old_partner[from];
            let np = port(c, s);
            self.hint[np] = old_hint[from];
            if q / 4 == c {
                // self-loop at the crossing: target slot moves too
                let qs = q % 4;
                self.partner[np] = port(c, (qs + 4 - k % 4) % 4);
            } else {
                self.partner[np] = q;
                self.partner[q] = np;
            }
        }
    }

    /// Builds a valid diagram: chooses an orientation per component from the
    /// hints, puts each incoming under-edge in slot 0, labels edges along
    /// components.
    pub fn to_diagram(&self) -> Diagram {
        let mut net = self.clone();
        let live: Vec<usize> = (0..net.alive.len()).filter(|&c| net.alive[c]).collect();
        if live.len() != net.alive.len() {
            net = net.compacted(&live);
        }
        let np = net.partner.len();
        let mut arrival = vec![false; np];
        let mut seen = vec![false; np];
        for start in 0..np {
            if seen[start] {
                continue;
            }
            let fwd = orbit(&net.partner, start);
            let mut score = 0;
            for &a in &fwd {
                seen[a] = true;
                seen[net.partner[a]] = true;
                score += net.hint[a].vote(true) + net.hint[net.partner[a]].vote(false);
            }
            let chosen = if score >= 0 {
                fwd
            } else {
                orbit(&net.partner, net.partner[start])
            };
            for a in chosen {
                arrival[a] = true;
            }
        }
        // incoming under-edge into slot 0
        for c in 0..net.alive.len() {
            if !arrival[port(c, 0)] {
                net.rotate(c, 2);
                for s in [0, 1] {
                    arrival.swap(port(c, s), port(c, s + 2));
                }
            }
        }
        let mut label = vec![0u32; np];
        let mut next = 1u32;
        for start in 0..np {
            if label[start] != 0 || !arrival[start] {
                continue;
            }
            let mut a = start;
            loop {
                label[a] = next;
                label[net.partner[a]] = next;
                next += 1;
                a = net.partner[opposite(a)];
                if a == start {
                    break;
                }
            }
        }
        let crossings = (0..net.alive.len())
            .map(|c| Crossing::new([0, 1, 2, 3].map(|s| label[port(c, s)])))
            .collect();
        Diagram::new(crossings, net.free_loops)
    }

    fn compacted(&self, live: &[usize]) -> Net {
        let mut index = HashMap::new();
        for (i, &c) in live.iter().enumerate() {
            index.insert(c, i);
        }
        let mut out = Net {
            partner: vec![0; 4 * live.len()],
            alive: vec![true; live.len()],
            hint: vec![Hint::None; 4 * live.len()],
            free_loops: self.free_loops,
        };
        for (i, &c) in live.iter().enumerate() {
            for s in 0..4 {
                let q = self.partner[port(c, s)];
                out.partner[port(i, s)] = port(index[&(q / 4)], q % 4);
                out.hint[port(i, s)] = self.hint[port(c, s)];
            }
        }
        out
    }
}

/// Splits a diagram into its connected pieces (each without free loops,
/// orientation kept) plus the number of free loops.
pub(crate) fn split_pieces(d: &Diagram) -> Result<(Vec<Diagram>, usize)> {
    let t = d.topology()?;
    let groups = pieces(&t.partner);
    if groups.len() == 1 {
        let only = Diagram::new(d.crossings().to_vec(), 0);
        return Ok((vec![only], d.free_loops()));
    }
    let base = Net::from_diagram(d, &t);
    let out = groups
        .iter()
        .map(|g| {
            let mut net = base.clone();
            net.free_loops = 0;
            net.alive = vec![false; d.crossing_count()];
            for &c in g {
                net.alive[c] = true;
            }
            net.to_diagram()
        })
        .collect();
    Ok((out, d.free_loops()))
}

const PSEUDO: usize = 1 << 40;

/// Pending rewrite of a [`Net`].
pub(crate) struct Splice {
    net: Net,
    links: HashMap<usize, usize>,
    through: HashMap<usize, usize>,
    next_pseudo: usize,
}

impl Splice {
    pub fn new(net: Net) -> Self {
        Splice {
            net,
            links: HashMap::new(),
            through: HashMap::new(),
            next_pseudo: PSEUDO,
        }
    }

    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        let t = d.topology()?;
        Ok(Self::new(Net::from_diagram(d, &t)))
    }

    pub fn net(&self) -> &Net {
        &self.net
    }

    /// Current partner of a node, honouring pending links.
    pub fn partner(&self, n: usize) -> usize {
        match self.links.get(&n) {
            Some(&m) => m,
            None => self.net.partner.get(n).copied().unwrap_or(usize::MAX),
        }
    }

    pub fn link(&mut self, a: usize, b: usize) {
        self.links.insert(a, b);
        self.links.insert(b, a);
    }

    /// Removes crossing `c`; its ports are joined pairwise (by slot) so
    /// strands run straight through the hole.
    pub fn kill(&mut self, c: usize, pairs: [(usize, usize); 2]) {
        self.net.alive[c] = false;
        for (a, b) in pairs {
            self.through.insert(port(c, a), port(c, b));
            self.through.insert(port(c, b), port(c, a));
        }
    }

    /// Removes crossing `c` outright; every path through its ports must be
    /// relinked by the caller.
    pub fn remove(&mut self, c: usize) {
        self.net.alive[c] = false;
    }

    /// Removes crossing `c`, leaving a strand end in place of each slot:
    /// the returned ends (by slot) stay joined to whatever the slots were
    /// joined to, including other slots of `c`.
    pub fn detach(&mut self, c: usize) -> [usize; 4] {
        let ports = [0, 1, 2, 3].map(|k| port(c, k));
        let ends = ports.map(|_| self.strand());
        let old = ports.map(|p| self.partner(p));
        for k in 0..4 {
            let (u, _) = ends[k];
            match ports.iter().position(|&p| p == old[k]) {
                Some(j) => {
                    if j > k {
                        self.link(u, ends[j].0);
                    }
                }
                None => self.link(u, old[k]),
            }
        }
        self.net.alive[c] = false;
        ends.map(|(_, v)| v)
    }

    /// A free strand piece with two ends.
    pub fn strand(&mut self) -> (usize, usize) {
        let a = self.next_pseudo;
        let b = a + 1;
        self.next_pseudo += 2;
        self.through.insert(a, b);
        self.through.insert(b, a);
        (a, b)
    }

    /// Consumes one free loop as a strand piece.
    pub fn take_free_loop(&mut self) -> Result<(usize, usize)> {
        if self.net.free_loops == 0 {
            return Err(KnotError::MoveMismatch("no free loop available".into()));
        }
        self.net.free_loops -= 1;
        Ok(self.strand())
    }

    /// Adds a crossing with unset partners; returns its index.
    pub fn add_crossing(&mut self, hints: [Hint; 4]) -> usize {
        let c = self.net.alive.len();
        self.net.alive.push(true);
        for (s, h) in hints.into_iter().enumerate() {
            self.net.partner.push(usize::MAX);
            self.net.hint.push(h);
            let _ = s;
        }
        c
    }

    pub fn hint(&self, p: usize) -> Hint {
        self.net.hint[p]
    }

    fn is_live_port(&self, n: usize) -> bool {
        n < PSEUDO && self.net.alive[n / 4]
    }

    pub fn finish(self) -> Result<Diagram> {
        let np = self.net.partner.len();
        let mut partner = self.net.partner.clone();
        let mut used: HashSet<usize> = HashSet::new();
        for p in 0..np {
            if !self.is_live_port(p) {
                continue;
            }
            let mut q = self.partner(p);
            let mut guard = 0;
            while !self.is_live_port(q) {
                if q == usize::MAX {
                    return Err(KnotError::CheckFailed("unlinked strand end in rewrite".into()));
                }
                let t = *self.through.get(&q).ok_or_else(|| {
                    KnotError::CheckFailed(format!("dangling node {q} in rewrite"))
                })?;
                used.insert(q);
                used.insert(t);
                q = self.partner(t);
                guard += 1;
                if guard > 4 * np + self.through.len() + 4 {
                    return Err(KnotError::CheckFailed("rewrite chain does not end".into()));
                }
            }
            partner[p] = q;
        }
        for p in 0..np {
            if self.is_live_port(p) && partner[partner[p]] != p {
                return Err(KnotError::CheckFailed("asymmetric rewrite".into()));
            }
        }
        let mut free = self.net.free_loops;
        let mut nodes: Vec<usize> = self.through.keys().copied().collect();
        nodes.sort_unstable();
        for n in nodes {
            if used.contains(&n) {
                continue;
            }
            free += 1;
            let mut m = n;
            loop {
                used.insert(m);
                let t = self.through[&m];
                used.insert(t);
                m = self.partner(t);
                if m == n {
                    break;
                }
                if self.is_live_port(m) {
                    return Err(KnotError::CheckFailed("loop reaches live crossing".into()));
                }
            }
        }
        let net = Net {
            partner,
            alive: self.net.alive,
            hint: self.net.hint,
            free_loops: free,
        };
        net.to_diagram().checked()
    }
}
