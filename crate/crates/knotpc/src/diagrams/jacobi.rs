//! Jacobi diagrams: unitrivalent graphs attached to an oriented Wilson loop,
//! reduced to chord diagrams by the STU relation. All coefficients live in
//! GF(2), so vertex orientations and signs are dropped.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{validation, Result};

use super::chord::ChordDiagram;

/// One end of an edge: a marked point on the Wilson loop or an internal
/// trivalent vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum End {
    Loop(usize),
    Inner(usize),
}

/// A Jacobi diagram with `loop_len` marked loop positions (cyclic order
/// `0..loop_len`) and `inner_len` internal vertices.
///
/// Every loop position has degree exactly 1 and every internal vertex degree
/// exactly 3; the whole graph including the loop is connected. The degree of
/// the diagram is `(loop_len + inner_len) / 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct JacobiDiagram {
    loop_len: usize,
    inner_len: usize,
    edges: Vec<(End, End)>,
}

impl JacobiDiagram {
    pub fn new(loop_len: usize, inner_len: usize, edges: Vec<(End, End)>) -> Result<Self> {
        let d = Self::assemble(loop_len, inner_len, edges);
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn assemble(loop_len: usize, inner_len: usize, edges: Vec<(End, End)>) -> Self {
        let mut edges: Vec<(End, End)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort();
        JacobiDiagram {
            loop_len,
            inner_len,
            edges,
        }
    }

    fn validate(&self) -> Result<()> {
        let mut loop_deg = vec![0usize; self.loop_len];
        let mut inner_deg = vec![0usize; self.inner_len];
        let bump = |end: &End, loop_deg: &mut Vec<usize>, inner_deg: &mut Vec<usize>| {
            match *end {
                End::Loop(p) => {
                    if p >= self.loop_len {
                        return Err(validation(format!("loop position p{p} out of range")));
                    }
                    loop_deg[p] += 1;
                }
                End::Inner(v) => {
                    if v >= self.inner_len {
                        return Err(validation(format!("internal vertex v{v} out of range")));
                    }
                    inner_deg[v] += 1;
                }
            }
            Ok(())
        };
        for (a, b) in &self.edges {
            bump(a, &mut loop_deg, &mut inner_deg)?;
            bump(b, &mut loop_deg, &mut inner_deg)?;
        }
        if let Some(p) = loop_deg.iter().position(|&d| d != 1) {
            return Err(validation(format!(
                "loop position p{p} has degree {}, expected 1",
                loop_deg[p]
            )));
        }
        if let Some(v) = inner_deg.iter().position(|&d| d != 3) {
            return Err(validation(format!(
                "internal vertex v{v} has degree {}, expected 3",
                inner_deg[v]
            )));
        }
        if (self.loop_len + self.inner_len) % 2 != 0 || self.loop_len + self.inner_len == 0 {
            return Err(validation(format!(
                "{} loop positions and {} internal vertices do not give an integer positive degree",
                self.loop_len, self.inner_len
            )));
        }
        if !self.is_connected_with_loop() {
            return Err(validation(
                "diagram is not connected to the Wilson loop".to_string(),
            ));
        }
        Ok(())
    }

    /// Connectivity of the whole graph, treating the Wilson loop (and every
    /// marked point on it) as a single hub.
    fn is_connected_with_loop(&self) -> bool {
        if self.inner_len == 0 {
            return self.loop_len > 0;
        }
        if self.loop_len == 0 {
            return false;
        }
        let mut reached = vec![false; self.inner_len];
        let mut frontier: Vec<usize> = Vec::new();
        for (a, b) in &self.edges {
            if let (End::Loop(_), End::Inner(v)) | (End::Inner(v), End::Loop(_)) = (*a, *b) {
                if !reached[v] {
                    reached[v] = true;
                    frontier.push(v);
                }
            }
        }
        while let Some(v) = frontier.pop() {
            for (a, b) in &self.edges {
                if let (End::Inner(x), End::Inner(y)) = (*a, *b) {
                    if x == v && !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                    if y == v && !reached[x] {
                        reached[x] = true;
                        frontier.push(x);
                    }
                }
            }
        }
        reached.iter().all(|&r| r)
    }

    pub fn legs(&self) -> usize {
        self.loop_len
    }

    pub fn internal_count(&self) -> usize {
        self.inner_len
    }

    pub fn degree(&self) -> usize {
        (self.loop_len + self.inner_len) / 2
    }

    pub fn edges(&self) -> &[(End, End)] {
        &self.edges
    }

    /// Internal vertices none of whose three edges reaches the Wilson loop.
    pub fn insulated_vertices(&self) -> Vec<usize> {
        let mut touches_loop = vec![false; self.inner_len];
        for (a, b) in &self.edges {
            if let (End::Loop(_), End::Inner(v)) | (End::Inner(v), End::Loop(_)) = (*a, *b) {
                touches_loop[v] = true;
            }
        }
        (0..self.inner_len).filter(|&v| !touches_loop[v]).collect()
    }

    /// True when deleting `v` and its edges leaves the rest of the diagram,
    /// Wilson loop included, connected.
    pub fn is_good_vertex(&self, v: usize) -> Result<bool> {
        if v >= self.inner_len {
            return Err(validation(format!("unknown internal vertex v{v}")));
        }
        let mut reached = vec![false; self.inner_len];
        reached[v] = true; // excluded from the walk
        let mut frontier: Vec<usize> = Vec::new();
        for (a, b) in &self.edges {
            if let (End::Loop(_), End::Inner(u)) | (End::Inner(u), End::Loop(_)) = (*a, *b) {
                if u != v && !reached[u] {
                    reached[u] = true;
                    frontier.push(u);
                }
            }
        }
        while let Some(u) = frontier.pop() {
            for (a, b) in &self.edges {
                if let (End::Inner(x), End::Inner(y)) = (*a, *b) {
                    if x == v || y == v {
                        continue;
                    }
                    if x == u && !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                    if y == u && !reached[x] {
                        reached[x] = true;
                        frontier.push(x);
                    }
                }
            }
        }
        Ok(reached.iter().all(|&r| r))
    }

    /// True when some pair of insulated vertices is joined by no edge.
    pub fn has_two_nonadjacent_insulated(&self) -> bool {
        let iv = self.insulated_vertices();
        for (i, &u) in iv.iter().enumerate() {
            for &w in &iv[i + 1..] {
                let adjacent = self.edges.iter().any(|&(a, b)| {
                    (a, b) == (End::Inner(u), End::Inner(w))
                        || (a, b) == (End::Inner(w), End::Inner(u))
                });
                if !adjacent {
                    return true;
                }
            }
        }
        false
    }

    /// When no internal vertices remain the diagram is a chord diagram;
    /// returns its canonical form.
    pub fn as_chord_diagram(&self) -> Option<ChordDiagram> {
        Some(self.chord_word()?.canonicalize())
    }

    fn chord_word(&self) -> Option<ChordDiagram> {
        if self.inner_len != 0 {
            return None;
        }
        let mut word = vec![0u32; self.loop_len];
        for (label, (a, b)) in self.edges.iter().enumerate() {
            let (End::Loop(pa), End::Loop(pb)) = (*a, *b) else {
                return None;
            };
            word[pa] = label as u32 + 1;
            word[pb] = label as u32 + 1;
        }
        Some(ChordDiagram::from_word_unchecked(word))
    }

    /// The deterministic pivot order: (internal vertex, leg position) pairs
    /// sorted by vertex then by loop position.
    fn pivot_candidates(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a, b) {
                (End::Loop(p), End::Inner(v)) | (End::Inner(v), End::Loop(p)) => Some((v, p)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// One STU step at vertex `v`, pivoting on its leg at loop position `p`:
    /// `v` is deleted and its two remaining edge ends are attached to the two
    /// loop positions that replace `p`, in the two possible orders.
    fn stu_split(&self, v: usize, p: usize) -> [JacobiDiagram; 2] {
        let remap_loop = |q: usize| if q < p { q } else { q + 1 };
        let remap_end = |e: End| match e {
            End::Loop(q) => End::Loop(remap_loop(q)),
            End::Inner(u) => End::Inner(if u > v { u - 1 } else { u }),
        };

        let mut base: Vec<(End, End)> = Vec::with_capacity(self.edges.len() + 1);
        let mut targets: Vec<End> = Vec::new();
        let mut self_loop = false;
        let mut pivot_skipped = false;
        for &(a, b) in &self.edges {
            let at_v = |e: End| e == End::Inner(v);
            match (at_v(a), at_v(b)) {
                (true, true) => self_loop = true,
                (true, false) | (false, true) => {
                    let other = if at_v(a) { b } else { a };
                    if other == End::Loop(p) && !pivot_skipped {
                        pivot_skipped = true; // the pivot leg itself
                    } else {
                        targets.push(other);
                    }
                }
                (false, false) => base.push((remap_end(a), remap_end(b))),
            }
        }
        debug_assert!(pivot_skipped);
        let (slot_a, slot_b) = (End::Loop(p), End::Loop(p + 1));
        let make = |pairing: [(End, End); 2]| {
            let mut edges = base.clone();
            edges.extend(pairing);
            JacobiDiagram::assemble(self.loop_len + 1, self.inner_len - 1, edges)
        };
        if self_loop {
            debug_assert!(targets.is_empty());
            // A self-loop at v turns into the single chord (p, p+1); both
            // attachment orders coincide and the two copies cancel mod 2,
            // the mod-2 shadow of "a diagram with a loop edge is zero".
            let mut edges = base;
            edges.push((slot_a, slot_b));
            let child = JacobiDiagram::assemble(self.loop_len + 1, self.inner_len - 1, edges);
            return [child.clone(), child];
        }
        debug_assert_eq!(targets.len(), 2);
        let (t1, t2) = (remap_end(targets[0]), remap_end(targets[1]));
        [
            make([(t1, slot_a), (t2, slot_b)]),
            make([(t1, slot_b), (t2, slot_a)]),
        ]
    }

    /// Full STU reduction to a mod-2 sum of chord diagrams, using the
    /// deterministic default pivot order.
    pub fn stu_reduce(&self) -> DiagramSumMod2 {
        self.stu_reduce_counted().0
    }

    /// STU reduction together with the number of chord-diagram terms visited
    /// before mod-2 cancellation (`2^k` for `k` internal vertices).
    ///
    /// Default pivot: the lowest-indexed internal vertex with a leg, and
    /// among its legs the lowest-position leg that already existed in the
    /// input diagram, falling back to the lowest position outright. Pivoting
    /// on original legs reproduces, on wheels, the expansion in which every
    /// spoke edge becomes a chord next to its own leg; at degree 3, where
    /// reductions are genuinely strategy-dependent, that is the expansion
    /// the wheel evaluation is defined by.
    pub fn stu_reduce_counted(&self) -> (DiagramSumMod2, u64) {
        let mut acc = DiagramSumMod2::empty();
        let leaves = self.reduce_impl(&mut Self::default_pick, &mut |leaf| {
            acc.toggle(leaf.canonicalize())
        });
        (acc, leaves)
    }

    /// STU reduction with a caller-chosen pivot strategy. At each expansion
    /// node `picker` receives the number of available (vertex, leg) pivots,
    /// listed in (vertex, position) order, and returns the index of the one
    /// to use. The weight of the result is independent of the strategy from
    /// degree 4 up.
    pub fn stu_reduce_with(&self, mut picker: impl FnMut(usize) -> usize) -> (DiagramSumMod2, u64) {
        let mut acc = DiagramSumMod2::empty();
        let leaves = self.reduce_impl(
            &mut |candidates, _| picker(candidates.len()) % candidates.len(),
            &mut |leaf| acc.toggle(leaf.canonicalize()),
        );
        (acc, leaves)
    }

    /// The Hamiltonian weight of the STU reduction, together with the
    /// expansion term count, under the default pivot strategy.
    ///
    /// Computed directly as the mod-2 sum of the weight over all expansion
    /// leaves: terms that would cancel in the reduced set contribute an even
    /// number of equal summands, so no set bookkeeping is needed.
    pub fn stu_ham(&self) -> (bool, u64) {
        let mut parity = false;
        let leaves = self.reduce_impl(&mut Self::default_pick, &mut |leaf| parity ^= leaf.ham());
        (parity, leaves)
    }

    /// [`stu_ham`](Self::stu_ham) under a caller-chosen pivot strategy.
    pub fn stu_ham_with(&self, mut picker: impl FnMut(usize) -> usize) -> (bool, u64) {
        let mut parity = false;
        let leaves = self.reduce_impl(
            &mut |candidates, _| picker(candidates.len()) % candidates.len(),
            &mut |leaf| parity ^= leaf.ham(),
        );
        (parity, leaves)
    }

    fn default_pick(candidates: &[(usize, usize)], original: &[bool]) -> usize {
        candidates
            .iter()
            .enumerate()
            .min_by_key(|&(_, &(v, p))| (v, !original[p], p))
            .map(|(i, _)| i)
            .expect("candidates are nonempty")
    }

    fn reduce_impl(
        &self,
        choose: &mut impl FnMut(&[(usize, usize)], &[bool]) -> usize,
        on_leaf: &mut impl FnMut(&ChordDiagram),
    ) -> u64 {
        let mut leaves = 0u64;
        let mut stack = vec![(self.clone(), vec![true; self.loop_len])];
        while let Some((d, original)) = stack.pop() {
            if d.inner_len == 0 {
                leaves += 1;
                on_leaf(&d.chord_word().expect("fully reduced diagram"));
                continue;
            }
            let candidates = d.pivot_candidates();
            assert!(
                !candidates.is_empty(),
                "connected diagram with internal vertices has a legged vertex"
            );
            let (v, p) = candidates[choose(&candidates, &original)];
            let mut child_flags = original.clone();
            child_flags.splice(p..=p, [false, false]);
            let [left, right] = d.stu_split(v, p);
            stack.push((left, child_flags.clone()));
            stack.push((right, child_flags));
        }
        leaves
    }

    /// Parses the line-oriented file format:
    ///
    /// ```text
    /// legs 3
    /// edge p0 v0
    /// edge v0 v1
    /// ...
    /// ```
    ///
    /// Loop positions are `p0..p{m-1}` in cyclic order, internal vertices
    /// `v0..`. Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut legs: Option<usize> = None;
        let mut edges: Vec<(End, End)> = Vec::new();
        let mut max_inner: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("legs") => {
                    let m: usize = tokens
                        .next()
                        .ok_or_else(|| validation("legs line missing a count"))?
                        .parse()
                        .map_err(|_| validation(format!("bad leg count on line {}", lineno + 1)))?;
                    if legs.replace(m).is_some() {
                        return Err(validation("duplicate legs line"));
                    }
                }
                Some("edge") => {
                    let mut parse_end = |tok: Option<&str>| -> Result<End> {
                        let tok =
                            tok.ok_or_else(|| validation("edge line needs two endpoints"))?;
                        let (kind, idx) = tok.split_at(1);
                        let idx: usize = idx.parse().map_err(|_| {
                            validation(format!("bad endpoint {tok:?} on line {}", lineno + 1))
                        })?;
                        match kind {
                            "p" => Ok(End::Loop(idx)),
                            "v" => {
                                max_inner = Some(max_inner.map_or(idx, |m: usize| m.max(idx)));
                                Ok(End::Inner(idx))
                            }
                            _ => Err(validation(format!(
                                "endpoint {tok:?} must start with p or v"
                            ))),
                        }
                    };
                    let a = parse_end(tokens.next())?;
                    let b = parse_end(tokens.next())?;
                    edges.push((a, b));
                }
                Some(other) => {
                    return Err(validation(format!(
                        "unknown directive {other:?} on line {}",
                        lineno + 1
                    )))
                }
                None => unreachable!(),
            }
        }
        let legs = legs.ok_or_else(|| validation("missing legs line"))?;
        let inner = max_inner.map_or(0, |m| m + 1);
        Self::new(legs, inner, edges)
    }
}

impl fmt::Display for JacobiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "legs {}", self.loop_len)?;
        let name = |e: &End| match *e {
            End::Loop(p) => format!("p{p}"),
            End::Inner(v) => format!("v{v}"),
        };
        for (a, b) in &self.edges {
            writeln!(f, "edge {} {}", name(a), name(b))?;
        }
        Ok(())
    }
}

/// The wheel with `n` spokes: an internal `n`-cycle `v_0..v_{n-1}` with a leg
/// from `v_i` to loop position `sigma(i)`.
pub fn wheel(n: usize, sigma: &[usize]) -> Result<JacobiDiagram> {
    if n < 2 {
        return Err(validation(format!("wheel degree must be at least 2, got {n}")));
    }
    if sigma.len() != n {
        return Err(validation(format!(
            "permutation has {} entries, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(validation(format!("invalid permutation {sigma:?}")));
        }
        seen[s] = true;
    }
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        edges.push((End::Inner(i), End::Inner((i + 1) % n)));
        edges.push((End::Inner(i), End::Loop(sigma[i])));
    }
    JacobiDiagram::new(n, n, edges)
}

/// A mod-2 formal sum of canonical chord diagrams: the set of diagrams that
/// appear with odd multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiagramSumMod2 {
    terms: BTreeSet<ChordDiagram>,
}

impl DiagramSumMod2 {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn toggle(&mut self, d: ChordDiagram) {
        debug_assert!(d.is_canonical());
        if !self.terms.remove(&d) {
            self.terms.insert(d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &ChordDiagram> {
        self.terms.iter()
    }

    pub fn contains(&self, d: &ChordDiagram) -> bool {
        self.terms.contains(d)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value of the Hamiltonian weight system on the sum: the mod-2 sum of
    /// the weights of the surviving terms.
    pub fn ham(&self) -> bool {
        self.terms.iter().filter(|d| d.ham()).count() % 2 == 1
    }
}
