//! Planar-diagram (PD) model of link diagrams.
//!
//! A crossing lists four edge labels counterclockwise starting at the
//! incoming under-edge, so slots 0/2 carry the under-strand and slots 1/3
//! the over-strand. Crossing-free components are kept as a count.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KnotError, Result};

pub type EdgeId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [EdgeId; 4],
}

impl Crossing {
    pub fn new(slots: [EdgeId; 4]) -> Self {
        Crossing { slots }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// Outcome of [`Diagram::validate`]; an empty violation list means ok.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-component reversal flags relative to the diagram's own orientation.
/// Components are indexed as in [`Topology::components`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn reversing(component_count: usize, which: &[usize]) -> Self {
        let mut reversed = vec![false; component_count];
        for &w in which {
            reversed[w] = true;
        }
        Orientation { reversed }
    }

    fn flipped(&self, comp: usize) -> bool {
        self.reversed.get(comp).copied().unwrap_or(false)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcDecomposition {
    /// Indexed by `edge - 1`.
    pub arc_of_edge: Vec<usize>,
    /// Includes one arc per free loop (those arcs own no edges).
    pub arc_count: usize,
}

impl ArcDecomposition {
    pub fn arc(&self, e: EdgeId) -> usize {
        self.arc_of_edge[e as usize - 1]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentData {
    pub com: usize,
    pub writhe: i64,
    /// Sum of signs of self-crossings, per edge component.
    pub self_writhe: Vec<i64>,
    /// Symmetric matrix of signed crossing counts between edge components.
    pub inter: Vec<Vec<i64>>,
}

/// A value that is an integer or half an odd integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub fn as_integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Derived structure of a valid diagram: port adjacency, components and the
/// default orientation. Global port index is `4 * crossing + slot`.
#[derive(Clone, Debug)]
pub struct Topology {
    pub partner: Vec<usize>,
    /// Arrival ports in traversal order, one list per edge component.
    pub components: Vec<Vec<usize>>,
    pub component_of_port: Vec<usize>,
    /// Whether each port is where its edge arrives under the default orientation.
    pub arrival: Vec<bool>,
    /// Edge label carried by each port.
    pub edge_of_port: Vec<EdgeId>,
}

pub(crate) fn port(c: usize, s: usize) -> usize {
    4 * c + s
}

pub(crate) fn opposite(p: usize) -> usize {
    (p & !3) | ((p + 2) & 3)
}

pub(crate) fn ccw_next(p: usize) -> usize {
    (p & !3) | ((p + 1) & 3)
}

impl Topology {
    pub fn crossing_count(&self) -> usize {
        self.partner.len() / 4
    }

    /// Sign of crossing `c` under the given orientation.
    pub fn sign(&self, c: usize, o: &Orientation) -> i64 {
        let under_in = port(c, 0);
        let over_in_default = if self.arrival[port(c, 1)] {
            port(c, 1)
        } else {
            port(c, 3)
        };
        // positive iff the over strand runs from slot 3 to slot 1
        let mut s = if over_in_default == port(c, 3) { 1 } else { -1 };
        if o.flipped(self.component_of_port[under_in]) {
            s = -s;
        }
        if o.flipped(self.component_of_port[over_in_default]) {
            s = -s;
        }
        s
    }

    /// Edge labels of a component in traversal order.
    pub fn component_edges(&self, comp: usize) -> Vec<EdgeId> {
        self.components[comp]
            .iter()
            .map(|&p| self.edge_of_port[p])
            .collect()
    }

    fn arrival_under(&self, c: usize, o: &Orientation) -> usize {
        let p = port(c, 0);
        if o.flipped(self.component_of_port[p]) {
            port(c, 2)
        } else {
            p
        }
    }

    /// (incoming over port, outgoing over port) under an orientation.
    pub fn over_ports(&self, c: usize, o: &Orientation) -> (usize, usize) {
        let mut pin = if self.arrival[port(c, 1)] { port(c, 1) } else { port(c, 3) };
        if o.flipped(self.component_of_port[pin]) {
            pin = opposite(pin);
        }
        (pin, opposite(pin))
    }

    /// (incoming under port, outgoing under port) under an orientation.
    pub fn under_ports(&self, c: usize, o: &Orientation) -> (usize, usize) {
        let pin = self.arrival_under(c, o);
        (pin, opposite(pin))
    }

    /// Face index of every port: a port belongs to the face lying to the
    /// right of the dart that arrives at it.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        faces_of(&self.partner, |_| true)
    }
}

/// Face decomposition for a port-partner map; dead ports are skipped.
pub(crate) fn faces_of(partner: &[usize], alive: impl Fn(usize) -> bool) -> (Vec<usize>, usize) {
    let mut face = vec![usize::MAX; partner.len()];
    let mut count = 0;
    for start in 0..partner.len() {
        if face[start] != usize::MAX || !alive(start) {
            continue;
        }
        let mut p = start;
        loop {
            face[p] = count;
            p = partner[ccw_next(p)];
            if p == start {
                break;
            }
        }
        count += 1;
    }
    (face, count)
}

impl Diagram {
    /// Builds without validation; call [`Diagram::validate`] or
    /// [`Diagram::checked`] before use.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Diagram {
            crossings,
            free_loops,
        }
    }

    pub fn from_pd(codes: &[[EdgeId; 4]], free_loops: usize) -> Self {
        Self::new(codes.iter().map(|&s| Crossing::new(s)).collect(), free_loops)
    }

    pub fn unlink(n: usize) -> Self {
        Self::new(Vec::new(), n)
    }

    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(KnotError::InvalidDiagram(report.violations.join("; ")))
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn edge_count(&self) -> usize {
        self.crossings
            .iter()
            .flat_map(|c| c.slots.iter())
            .map(|&e| e as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.edge_count();
        let mut seen: HashMap<EdgeId, usize> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for &e in &c.slots {
                if e == 0 {
                    violations.push(format!("crossing {ci}: edge label 0 is not allowed"));
                }
                *seen.entry(e).or_insert(0) += 1;
            }
        }
        for e in 1..=n as EdgeId {
            match seen.get(&e).copied().unwrap_or(0) {
                2 => {}
                k => violations.push(format!("edge {e} occupies {k} slots (expected 2)")),
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        let partner = self.partner_map();
        // every component must be orientable with slot 0 as the incoming under-edge
        let mut visited = vec![false; partner.len()];
        for start in 0..partner.len() {
            if visited[start] {
                continue;
            }
            let fwd = orbit(&partner, start);
            for &p in &fwd {
                visited[p] = true;
                visited[opposite(p)] = true;
            }
            let fwd_in = fwd.iter().any(|&p| p % 4 == 0);
            let fwd_out = fwd.iter().any(|&p| p % 4 == 2);
            if fwd_in && fwd_out {
                let e = self.crossings[start / 4].slots[start % 4];
                violations.push(format!(
                    "component through edge {e} is not consistently oriented by its under-crossings"
                ));
            }
        }
        // planarity: each connected piece satisfies V - E + F = 2
        let (face, _) = faces_of(&partner, |_| true);
        for piece in pieces(&partner) {
            let faces: BTreeSet<usize> = piece
                .iter()
                .flat_map(|&c| (0..4).map(move |s| port(c, s)))
                .map(|p| face[p])
                .collect();
            let v = piece.len() as i64;
            if v - 2 * v + faces.len() as i64 != 2 {
                violations.push(format!(
                    "crossings {:?} do not form a planar diagram",
                    piece.iter().collect::<Vec<_>>()
                ));
            }
        }
        ValidationReport { violations }
    }

    pub(crate) fn partner_map(&self) -> Vec<usize> {
        let mut first: HashMap<EdgeId, usize> = HashMap::new();
        let mut partner = vec![usize::MAX; 4 * self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for (s, &e) in c.slots.iter().enumerate() {
                let p = port(ci, s);
                if let Some(q) = first.remove(&e) {
                    partner[p] = q;
                    partner[q] = p;
                } else {
                    first.insert(e, p);
                }
            }
        }
        partner
    }

    /// Derived structure; fails on invalid diagrams.
    pub fn topology(&self) -> Result<Topology> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(KnotError::InvalidDiagram(report.violations.join("; ")));
        }
        Ok(self.topology_unchecked())
    }

    pub(crate) fn topology_unchecked(&self) -> Topology {
        let partner = self.partner_map();
        let np = partner.len();
        let mut comp_of = vec![usize::MAX; np];
        let mut arrival = vec![false; np];
        let edge_of_port: Vec<EdgeId> = self
            .crossings
            .iter()
            .flat_map(|c| c.slots.iter().copied())
            .collect();
        // candidate components, keyed by smallest edge label for ordering
        let mut found: Vec<(EdgeId, Vec<usize>)> = Vec::new();
        let mut visited = vec![false; np];
        for start in 0..np {
            if visited[start] {
                continue;
            }
            let fwd = orbit(&partner, start);
            let rev = orbit(&partner, opposite(start));
            for &p in fwd.iter().chain(&rev) {
                visited[p] = true;
            }
            let chosen = if fwd.iter().any(|&p| p % 4 == 0) {
                fwd
            } else if rev.iter().any(|&p| p % 4 == 0) {
                rev
            } else {
                default_direction(fwd, rev, &edge_of_port)
            };
            let min_e = chosen.iter().map(|&p| edge_of_port[p]).min().unwrap();
            found.push((min_e, chosen));
        }
        found.sort_by_key(|(e, _)| *e);
        let mut components = Vec::new();
        for (ci, (_, arr)) in found.into_iter().enumerate() {
            // start the traversal at the smallest edge label
            let k = (0..arr.len())
                .min_by_key(|&i| edge_of_port[arr[i]])
                .unwrap();
            let mut rotated = arr[k..].to_vec();
            rotated.extend_from_slice(&arr[..k]);
            for &p in &rotated {
                arrival[p] = true;
                comp_of[p] = ci;
                comp_of[partner[p]] = ci;
            }
            components.push(rotated);
        }
        Topology {
            partner,
            components,
            component_of_port: comp_of,
            arrival,
            edge_of_port,
        }
    }

    pub fn arc_decomposition(&self) -> Result<ArcDecomposition> {
        self.topology()?;
        let n = self.edge_count();
        let mut uf = UnionFind::new(n);
        for c in &self.crossings {
            uf.union(c.slots[1] as usize - 1, c.slots[3] as usize - 1);
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut arc_of_edge = Vec::with_capacity(n);
        for e in 0..n {
            let r = uf.find(e);
            let next = ids.len();
            arc_of_edge.push(*ids.entry(r).or_insert(next));
        }
        Ok(ArcDecomposition {
            arc_of_edge,
            arc_count: ids.len() + self.free_loops,
        })
    }

    /// Number of edge cycles plus free loops.
    pub fn component_count(&self) -> usize {
        self.topology_unchecked().components.len() + self.free_loops
    }

    pub fn component_data(&self, o: &Orientation) -> Result<ComponentData> {
        let t = self.topology()?;
        let k = t.components.len();
        let mut self_writhe = vec![0; k];
        let mut inter = vec![vec![0; k]; k];
        let mut writhe = 0;
        for c in 0..self.crossings.len() {
            let s = t.sign(c, o);
            writhe += s;
            let a = t.component_of_port[port(c, 0)];
            let b = t.component_of_port[port(c, 1)];
            if a == b {
                self_writhe[a] += s;
            } else {
                inter[a][b] += s;
                inter[b][a] += s;
            }
        }
        Ok(ComponentData {
            com: k + self.free_loops,
            writhe,
            self_writhe,
            inter,
        })
    }

    pub fn writhe(&self, o: &Orientation) -> Result<i64> {
        Ok(self.component_data(o)?.writhe)
    }

    pub fn linking_number(&self, o: &Orientation) -> Result<HalfInteger> {
        let data = self.component_data(o)?;
        let mut twice = 0;
        for i in 0..data.inter.len() {
            for j in i + 1..data.inter.len() {
                twice += data.inter[i][j];
            }
        }
        Ok(HalfInteger { twice })
    }

    /// Relabel-invariant byte code; equal for diagrams that differ only by
    /// edge labels, crossing order, or the starting point of components.
    pub fn canonical_code(&self) -> Result<Vec<u8>> {
        self.topology()?;
        Ok(self.canonical_code_unchecked())
    }

    pub(crate) fn canonical_code_unchecked(&self) -> Vec<u8> {
        self.code_with(None)
    }

    /// Like [`Diagram::canonical_code`], but traversals follow the default
    /// orientation, so the code also pins down the orientation of every
    /// component.
    pub fn oriented_code(&self) -> Result<Vec<u8>> {
        let t = self.topology()?;
        Ok(self.code_with(Some(&t.arrival)))
    }

    fn code_with(&self, arrival: Option<&[bool]>) -> Vec<u8> {
        let partner = self.partner_map();
        let mut piece_codes: Vec<Vec<u32>> = pieces(&partner)
            .into_iter()
            .map(|piece| {
                piece
                    .iter()
                    .flat_map(|&c| (0..4).map(move |s| port(c, s)))
                    .filter(|&p| arrival.map_or(true, |a| !a[p]))
                    .map(|start| labelled_code(&partner, start, arrival))
                    .min()
                    .unwrap()
            })
            .collect();
        piece_codes.sort();
        let mut out = String::new();
        for code in &piece_codes {
            for chunk in code.chunks(4) {
                out.push_str(&format!(
                    "X{},{},{},{};",
                    chunk[0], chunk[1], chunk[2], chunk[3]
                ));
            }
            out.push('|');
        }
        out.push_str(&format!("O{}", self.free_loops));
        out.into_bytes()
    }

    /// Reverses the chosen components; the result's own orientation is the
    /// requested one.
    pub fn reoriented(&self, o: &Orientation) -> Result<Diagram> {
        let t = self.topology()?;
        let mut net = crate::net::Net::from_diagram(self, &t);
        for p in 0..net.hint.len() {
            let incoming = t.arrival[p] != o.flipped(t.component_of_port[p]);
            net.hint[p] = crate::net::Hint::Strong(incoming);
        }
        Ok(net.to_diagram())
    }

    /// Relabels edges in traversal order (no geometric change).
    pub fn normalized(&self) -> Result<Diagram> {
        let t = self.topology()?;
        Ok(crate::net::Net::from_diagram(self, &t).to_diagram())
    }
}

/// Arrival-port orbit of the traversal starting by arriving at `start`.
pub(crate) fn orbit(partner: &[usize], start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut p = partner[opposite(start)];
    while p != start {
        out.push(p);
        p = partner[opposite(p)];
    }
    out
}

/// Direction for components that never pass under: follow increasing labels.
fn default_direction(fwd: Vec<usize>, rev: Vec<usize>, edge_of_port: &[EdgeId]) -> Vec<usize> {
    let score = |arr: &[usize]| {
        let k = (0..arr.len())
            .min_by_key(|&i| edge_of_port[arr[i]])
            .unwrap();
        let next = edge_of_port[arr[(k + 1) % arr.len()]];
        (next, arr[k])
    };
    if score(&fwd) <= score(&rev) {
        fwd
    } else {
        rev
    }
}

/// Crossing sets of the connected pieces of the diagram.
pub(crate) fn pieces(partner: &[usize]) -> Vec<Vec<usize>> {
    let n = partner.len() / 4;
    let mut uf = UnionFind::new(n);
    for (p, &q) in partner.iter().enumerate() {
        if q != usize::MAX {
            uf.union(p / 4, q / 4);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..n {
        groups.entry(uf.find(c)).or_default().push(c);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// PD code of a connected piece relabelled by traversal from `start`,
/// leaving the crossing through `start`. Later components start from the
/// first port (in crossing label order) that is still unlabelled.
/// With `arrival` given, every component is traversed forwards.
fn labelled_code(partner: &[usize], start: usize, arrival: Option<&[bool]>) -> Vec<u32> {
    let mut edge_label: HashMap<usize, u32> = HashMap::new(); // keyed by min port of the edge
    let mut cross_label: HashMap<usize, u32> = HashMap::new();
    let mut cross_order: Vec<usize> = Vec::new();
    let mut next_edge = 1u32;
    let key = |p: usize| p.min(partner[p]);
    let visit = |c: usize, cross_label: &mut HashMap<usize, u32>, order: &mut Vec<usize>| {
        if !cross_label.contains_key(&c) {
            cross_label.insert(c, order.len() as u32);
            order.push(c);
        }
    };
    let mut leave = start;
    loop {
        // label one component, leaving through `leave`
        let first = leave;
        loop {
            visit(leave / 4, &mut cross_label, &mut cross_order);
            edge_label.insert(key(leave), next_edge);
            next_edge += 1;
            let arrive = partner[leave];
            visit(arrive / 4, &mut cross_label, &mut cross_order);
            leave = opposite(arrive);
            if leave == first {
                break;
            }
        }
        let mut found = None;
        'scan: for &c in &cross_order {
            for s in 0..4 {
                if !edge_label.contains_key(&key(port(c, s))) {
                    found = Some(port(c, s));
                    break 'scan;
                }
            }
        }
        match found {
            Some(p) => {
                leave = match arrival {
                    Some(a) if a[p] => opposite(p),
                    _ => p,
                }
            }
            None => break,
        }
    }
    let mut code = Vec::with_capacity(4 * cross_order.len());
    for &c in &cross_order {
        for s in 0..4 {
            code.push(edge_label[&key(port(c, s))]);
        }
    }
    code
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        // all crossings negative under the slot convention
        Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0)
    }

    fn hopf_minus() -> Diagram {
        Diagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]], 0)
    }

    #[test]
    fn trefoil_validates_and_has_three_arcs() {
        let d = trefoil();
        assert!(d.validate().is_ok());
        assert_eq!(d.arc_decomposition().unwrap().arc_count, 3);
        let data = d.component_data(&Orientation::default()).unwrap();
        assert_eq!(data.com, 1);
        assert_eq!(data.writhe, -3);
    }

    #[test]
    fn unknot_without_crossings() {
        let d = Diagram::unlink(1);
        assert!(d.validate().is_ok());
        assert_eq!(d.arc_decomposition().unwrap().arc_count, 1);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.linking_number(&Orientation::default()).unwrap().twice, 0);
    }

    #[test]
    fn duplicated_edge_is_reported() {
        let d = Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 1]], 0);
        let r = d.validate();
        assert!(!r.is_ok());
        assert!(r.violations.iter().any(|v| v.contains("edge 1 ")));
        assert!(r.violations.iter().any(|v| v.contains("edge 3 ")));
    }

    #[test]
    fn inconsistent_under_orientation_is_reported() {
        // both under-passages of this 2-crossing loop point against each other
        let d = Diagram::from_pd(&[[1, 3, 2, 4], [1, 4, 2, 3]], 0);
        assert!(!d.validate().is_ok());
    }

    #[test]
    fn hopf_linking_number_and_reversal() {
        let d = hopf_minus();
        assert!(d.validate().is_ok());
        let o = Orientation::default();
        let data = d.component_data(&o).unwrap();
        assert_eq!((data.com, data.writhe), (2, -2));
        assert_eq!(d.linking_number(&o).unwrap().as_integer(), Some(-1));
        let flip = Orientation::reversing(2, &[1]);
        assert_eq!(d.linking_number(&flip).unwrap().as_integer(), Some(1));
        let r = d.reoriented(&flip).unwrap();
        assert_eq!(
            r.linking_number(&Orientation::default()).unwrap().as_integer(),
            Some(1)
        );
    }

    #[test]
    fn canonical_code_ignores_labels_and_crossing_order() {
        let d = trefoil();
        let shifted = Diagram::from_pd(&[[3, 6, 4, 1], [5, 2, 6, 3], [1, 4, 2, 5]], 0);
        assert_eq!(d.canonical_code().unwrap(), shifted.canonical_code().unwrap());
        let relabel = |e: u32| (e + 2 - 1) % 6 + 1;
        let moved = Diagram::from_pd(
            &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]].map(|c| c.map(relabel)),
            0,
        );
        assert_eq!(d.canonical_code().unwrap(), moved.canonical_code().unwrap());
    }

    #[test]
    fn canonical_code_separates_mirror_images() {
        let mirror = Diagram::from_pd(&[[4, 2, 5, 1], [6, 4, 1, 3], [2, 6, 3, 5]], 0);
        assert!(mirror.validate().is_ok());
        assert_ne!(trefoil().canonical_code().unwrap(), mirror.canonical_code().unwrap());
        assert_eq!(
            Diagram::unlink(1).canonical_code().unwrap(),
            Diagram::unlink(1).canonical_code().unwrap()
        );
    }
}
