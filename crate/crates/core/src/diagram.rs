//! Oriented link diagrams: PD codes, braid closures, two-bridge plats, and the
//! Alexander relation matrix.
//!
//! A PD tuple `(a, b, c, d)` lists edge labels counterclockwise starting at the
//! incoming under-edge `a`; the under-strand runs `a -> c`. The crossing is
//! positive iff the over-strand runs `d -> b`.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::laurent::IntLaurent;
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error{}: {msg}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Syntax { line: Option<usize>, msg: String },
    #[error("edge label {label} is used inconsistently: {msg}")]
    LabelCount { label: i64, msg: String },
    #[error("edge labels cannot be oriented consistently at edge {label}")]
    Orientation { label: i64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("a two-bridge diagram needs at least one twist pair")]
    EmptyTwists,
    #[error("i/o error: {0}")]
    Io(String),
}

impl DiagramError {
    fn syntax(msg: impl Into<String>) -> Self {
        DiagramError::Syntax { line: None, msg: msg.into() }
    }

    fn at_line(self, line: usize) -> Self {
        match self {
            DiagramError::Syntax { msg, .. } => DiagramError::Syntax { line: Some(line), msg },
            other => DiagramError::Syntax { line: Some(line), msg: other.to_string() },
        }
    }
}

/// Planar diagram code; every label occurs in exactly two slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[i64; 4]>,
}

impl PdCode {
    pub fn new(crossings: Vec<[i64; 4]>) -> Result<Self, DiagramError> {
        let pd = PdCode { crossings };
        pd.validate()?;
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[i64; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut seen: HashMap<i64, [usize; 3]> = HashMap::new(); // total, slot a, slot c
        for x in &self.crossings {
            for (slot, &l) in x.iter().enumerate() {
                if l <= 0 {
                    return Err(DiagramError::syntax(format!("edge label {l} is not positive")));
                }
                let e = seen.entry(l).or_default();
                e[0] += 1;
                if slot == 0 {
                    e[1] += 1;
                }
                if slot == 2 {
                    e[2] += 1;
                }
            }
        }
        let mut labels: Vec<_> = seen.into_iter().collect();
        labels.sort();
        for (label, [total, a, c]) in labels {
            if total != 2 {
                return Err(DiagramError::LabelCount { label, msg: format!("appears {total} times, expected 2") });
            }
            if a > 1 || c > 1 {
                return Err(DiagramError::LabelCount {
                    label,
                    msg: "enters or leaves under-crossings twice".to_string(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{a},{b},{c},{d}]")?;
        }
        write!(f, "]")
    }
}

fn pd_from_value(v: &serde_json::Value) -> Result<PdCode, DiagramError> {
    let outer = v.as_array().ok_or_else(|| DiagramError::syntax("PD code must be a JSON array"))?;
    if outer.iter().any(|x| x.is_number()) {
        return Err(DiagramError::syntax(
            "flat integer lists (DT codes) are not accepted; convert to a PD code externally",
        ));
    }
    let mut crossings = Vec::with_capacity(outer.len());
    for x in outer {
        let quad = x.as_array().filter(|q| q.len() == 4).ok_or_else(|| {
            DiagramError::syntax(format!("crossing {x} is not a list of four edge labels"))
        })?;
        let mut out = [0i64; 4];
        for (slot, l) in quad.iter().enumerate() {
            out[slot] = l.as_i64().ok_or_else(|| DiagramError::syntax(format!("edge label {l} is not an integer")))?;
        }
        crossings.push(out);
    }
    PdCode::new(crossings)
}

/// Parse `[[a,b,c,d],...]`.
pub fn parse_pd(text: &str) -> Result<PdCode, DiagramError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| DiagramError::syntax(e.to_string()))?;
    pd_from_value(&v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: i8,
    pub rho: usize,
    pub lambda: usize,
    pub omega: usize,
}

impl Crossing {
    /// Incoming under-arc.
    pub fn alpha(&self) -> usize {
        if self.sign > 0 {
            self.rho
        } else {
            self.lambda
        }
    }

    /// Outgoing under-arc.
    pub fn beta(&self) -> usize {
        if self.sign > 0 {
            self.lambda
        } else {
            self.rho
        }
    }
}

/// Arcs `0..arcs`, signed crossings with roles, and the component count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    arcs: usize,
    crossings: Vec<Crossing>,
    components: usize,
}

impl Diagram {
    pub fn new(arcs: usize, crossings: Vec<Crossing>, components: usize) -> Self {
        assert!(crossings.iter().all(|c| c.rho < arcs && c.lambda < arcs && c.omega < arcs));
        Diagram { arcs, crossings, components }
    }

    pub fn unknot() -> Self {
        Diagram { arcs: 1, crossings: Vec::new(), components: 1 }
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Planar reflection: signs flip and the left/right under-arcs trade places.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { sign: -c.sign, rho: c.lambda, lambda: c.rho, omega: c.omega })
            .collect();
        Diagram { arcs: self.arcs, crossings, components: self.components }
    }

    /// Disjoint union with `k` crossingless circles.
    fn with_free_loops(mut self, k: usize) -> Self {
        self.arcs += k;
        self.components += k;
        self
    }
}

/// Rows are crossings, columns arcs; row `c` encodes
/// `lambda(c) - t rho(c) - (1 - t) omega(c) = 0`.
pub fn relation_matrix(d: &Diagram) -> Matrix<IntLaurent> {
    let mut m = Matrix::filled(d.crossings.len(), d.arcs, IntLaurent::zero());
    let t_minus_one = IntLaurent::from_terms([(1, 1), (-1, 0)]);
    for (i, c) in d.crossings.iter().enumerate() {
        m[(i, c.lambda)] = &m[(i, c.lambda)] + &IntLaurent::one();
        m[(i, c.rho)] = &m[(i, c.rho)] - &IntLaurent::t();
        m[(i, c.omega)] = &m[(i, c.omega)] + &t_minus_one;
    }
    m
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Diagram together with the arc containing each edge label.
#[derive(Clone, Debug)]
pub struct PdDiagram {
    pub diagram: Diagram,
    pub arc_of_edge: HashMap<i64, usize>,
}

pub fn pd_to_diagram(pd: &PdCode) -> Result<Diagram, DiagramError> {
    pd_to_diagram_with_arcs(pd).map(|r| r.diagram)
}

pub fn pd_to_diagram_with_arcs(pd: &PdCode) -> Result<PdDiagram, DiagramError> {
    if pd.is_empty() {
        return Ok(PdDiagram { diagram: Diagram::unknot(), arc_of_edge: HashMap::new() });
    }
    let xs = &pd.crossings;
    let mut labels: Vec<i64> = xs.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let index: HashMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
    for (k, x) in xs.iter().enumerate() {
        for (slot, l) in x.iter().enumerate() {
            occ[index[l]].push((k, slot));
        }
    }

    // over_in[k] = Some(true) when the over-strand enters at slot b
    let mut over_in: Vec<Option<bool>> = vec![None; xs.len()];
    let incoming = |over_in: &[Option<bool>], (k, slot): (usize, usize)| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            1 => over_in[k],
            _ => over_in[k].map(|b| !b),
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for (e, o) in occ.iter().enumerate() {
                let (x, y) = (o[0], o[1]);
                match (incoming(&over_in, x), incoming(&over_in, y)) {
                    (Some(a), Some(b)) if a == b => return Err(DiagramError::Orientation { label: labels[e] }),
                    (Some(a), None) => {
                        set_over(&mut over_in, y, !a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        set_over(&mut over_in, x, !b);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        // strands that only pass over: orient by label succession
        let Some(k) = over_in.iter().position(Option::is_none) else { break };
        let (b, d) = (xs[k][1], xs[k][3]);
        over_in[k] = Some(d == b + 1 || b > d + 1);
    }

    let mut arcs_uf = UnionFind::new(labels.len());
    let mut comp_uf = UnionFind::new(labels.len());
    for x in xs {
        let [a, b, c, d] = x.map(|l| index[&l]);
        arcs_uf.union(b, d);
        comp_uf.union(b, d);
        comp_uf.union(a, c);
    }
    let mut arc_id: HashMap<usize, usize> = HashMap::new();
    for e in 0..labels.len() {
        let r = arcs_uf.find(e);
        let next = arc_id.len();
        arc_id.entry(r).or_insert(next);
    }
    let arc_of = |uf: &mut UnionFind, e: usize| arc_id[&uf.find(e)];
    let mut crossings = Vec::with_capacity(xs.len());
    for (k, x) in xs.iter().enumerate() {
        let [a, b, c, _] = x.map(|l| index[&l]);
        let sign: i8 = if over_in[k] == Some(false) { 1 } else { -1 };
        let (alpha, beta, omega) = (arc_of(&mut arcs_uf, a), arc_of(&mut arcs_uf, c), arc_of(&mut arcs_uf, b));
        let (rho, lambda) = if sign > 0 { (alpha, beta) } else { (beta, alpha) };
        crossings.push(Crossing { sign, rho, lambda, omega });
    }
    let mut roots: Vec<usize> = (0..labels.len()).map(|e| comp_uf.find(e)).collect();
    roots.sort_unstable();
    roots.dedup();
    let arc_of_edge = labels.iter().enumerate().map(|(e, &l)| (l, arc_of(&mut arcs_uf, e))).collect();
    Ok(PdDiagram { diagram: Diagram::new(arc_id.len(), crossings, roots.len()), arc_of_edge })
}

fn set_over(over_in: &mut [Option<bool>], (k, slot): (usize, usize), incoming: bool) {
    debug_assert!(slot == 1 || slot == 3);
    over_in[k] = Some(if slot == 1 { incoming } else { !incoming });
}

/// Braid word on `strands` strands; letter `i` is `sigma_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands < 2 {
            return Err(DiagramError::BadParams(format!("a braid needs at least 2 strands, got {strands}")));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(DiagramError::BadParams(format!("letter {l} is not a generator of B_{strands}")));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// `"m:w1,w2,..."`, e.g. `"3:1,2,-1"`.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let (m, w) = text
            .split_once(':')
            .ok_or_else(|| DiagramError::syntax(format!("braid {text:?} is not of the form m:w1,w2,...")))?;
        let strands = m.trim().parse().map_err(|_| DiagramError::syntax(format!("bad strand count {m:?}")))?;
        let letters = w
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| DiagramError::syntax(format!("bad braid letter {s:?}"))))
            .collect::<Result<_, _>>()?;
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}:{}", self.strands, w.join(","))
    }
}

/// `(sigma_{m-1} ... sigma_1)^n`.
pub fn torus_braid(m: usize, n: usize) -> Result<BraidWord, DiagramError> {
    if m < 2 || n < 1 {
        return Err(DiagramError::BadParams(format!("torus braid needs m >= 2 and n >= 1, got ({m}, {n})")));
    }
    let delta: Vec<i32> = (1..m as i32).rev().collect();
    BraidWord::new(m, delta.repeat(n))
}

// ---- planar tangles traced into PD codes ----

/// Strands run top to bottom through `width` positions. A crossing at `pos`
/// joins positions `pos` and `pos + 1`.
#[derive(Clone, Copy, Debug)]
struct TangleCrossing {
    pos: usize,
    /// Over-strand runs from the upper left to the lower right.
    nw_over: bool,
}

#[derive(Clone, Copy, Debug)]
enum Closure {
    /// Bottom `i` joins top `i`.
    Braid,
    /// Caps on top (1,2) and bottom (0,1); top 0 joins bottom 2 around the
    /// outside. Oriented downward at top 1.
    Plat3,
}

// Ports in counterclockwise order.
const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Port(usize, usize),
    Top(usize),
    Bottom(usize),
}

struct Traced {
    pd: PdCode,
    /// Edge label at each port of each crossing.
    port_label: Vec<[i64; 4]>,
    free_loops: usize,
}

fn trace_tangle(width: usize, xs: &[TangleCrossing], closure: Closure) -> Traced {
    let mut wire: HashMap<Node, Vec<Node>> = HashMap::new();
    let mut link = |a: Node, b: Node| {
        wire.entry(a).or_default().push(b);
        wire.entry(b).or_default().push(a);
    };
    let mut dangling: Vec<Node> = (0..width).map(Node::Top).collect();
    for (k, x) in xs.iter().enumerate() {
        link(dangling[x.pos], Node::Port(k, NW));
        link(dangling[x.pos + 1], Node::Port(k, NE));
        dangling[x.pos] = Node::Port(k, SW);
        dangling[x.pos + 1] = Node::Port(k, SE);
    }
    for (i, &n) in dangling.iter().enumerate() {
        link(n, Node::Bottom(i));
    }
    match closure {
        Closure::Braid => (0..width).for_each(|i| link(Node::Bottom(i), Node::Top(i))),
        Closure::Plat3 => {
            link(Node::Top(1), Node::Top(2));
            link(Node::Bottom(0), Node::Bottom(1));
            link(Node::Top(0), Node::Bottom(2));
        }
    }

    let step = |from: Node, at: Node| -> Node {
        let nbrs = &wire[&at];
        if nbrs[0] == from && nbrs.len() > 1 {
            nbrs[1]
        } else {
            nbrs[0]
        }
    };
    let mut port_label = vec![[0i64; 4]; xs.len()];
    let mut entered = vec![[false; 4]; xs.len()];
    let mut visited: std::collections::HashSet<Node> = std::collections::HashSet::new();
    let mut next_label = 1i64;
    // a plat is oriented so that the strand leaving top 1 runs downward
    let first_seed = match closure {
        Closure::Plat3 => xs.iter().position(|x| x.pos <= 1 && x.pos + 1 >= 1).map(|k| (k, if xs[k].pos == 0 { NE } else { NW })),
        Closure::Braid => None,
    };
    while let Some((k0, p0)) = first_seed
        .into_iter()
        .chain((0..xs.len()).flat_map(|k| [(k, NW), (k, NE)]))
        .find(|&(k, p)| port_label[k][p] == 0)
    {
        let (mut k, mut p) = (k0, p0);
        loop {
            entered[k][p] = true;
            let out = (p + 2) % 4;
            port_label[k][out] = next_label;
            // walk the wire to the next crossing port
            let mut prev = Node::Port(k, out);
            let mut cur = wire[&prev][0];
            while !matches!(cur, Node::Port(..)) {
                visited.insert(cur);
                let nxt = step(prev, cur);
                prev = cur;
                cur = nxt;
            }
            let Node::Port(k2, p2) = cur else { unreachable!() };
            port_label[k2][p2] = next_label;
            next_label += 1;
            if (k2, p2) == (k0, p0) {
                break;
            }
            k = k2;
            p = p2;
        }
    }

    // crossingless circles among the unvisited terminals
    let mut free_loops = 0;
    let mut terminals: Vec<Node> =
        wire.keys().filter(|n| !matches!(n, Node::Port(..)) && !visited.contains(n)).copied().collect();
    terminals.sort_by_key(|n| match n {
        Node::Top(i) => (0, *i),
        Node::Bottom(i) => (1, *i),
        Node::Port(..) => unreachable!(),
    });
    for start in terminals {
        if visited.contains(&start) {
            continue;
        }
        free_loops += 1;
        let mut prev = start;
        let mut cur = wire[&start][0];
        visited.insert(start);
        while cur != start {
            visited.insert(cur);
            let nxt = step(prev, cur);
            prev = cur;
            cur = nxt;
        }
    }

    let crossings = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let under = if x.nw_over { [NE, SW] } else { [NW, SE] };
            let a = if entered[k][under[0]] { under[0] } else { under[1] };
            std::array::from_fn(|i| port_label[k][(a + i) % 4])
        })
        .collect();
    Traced { pd: PdCode { crossings }, port_label, free_loops }
}

fn traced_diagram(t: &Traced) -> Result<PdDiagram, DiagramError> {
    if t.pd.is_empty() {
        let d = Diagram { arcs: 0, crossings: Vec::new(), components: 0 };
        return Ok(PdDiagram { diagram: d.with_free_loops(t.free_loops), arc_of_edge: HashMap::new() });
    }
    let mut r = pd_to_diagram_with_arcs(&t.pd)?;
    r.diagram = r.diagram.with_free_loops(t.free_loops);
    Ok(r)
}

/// Closure of a braid, all strands oriented downwards. Positive `sigma_i`
/// carries the strand at position `i + 1` over to position `i`.
pub fn braid_to_diagram(word: &BraidWord) -> Diagram {
    let xs: Vec<TangleCrossing> = word
        .letters
        .iter()
        .map(|&l| TangleCrossing { pos: l.unsigned_abs() as usize - 1, nw_over: l < 0 })
        .collect();
    let t = trace_tangle(word.strands, &xs, Closure::Braid);
    traced_diagram(&t).expect("traced braid closures are orientable").diagram
}

/// Braid closure as a PD code (crossingless components are dropped).
pub fn braid_to_pd(word: &BraidWord) -> PdCode {
    let xs: Vec<TangleCrossing> = word
        .letters
        .iter()
        .map(|&l| TangleCrossing { pos: l.unsigned_abs() as usize - 1, nw_over: l < 0 })
        .collect();
    trace_tangle(word.strands, &xs, Closure::Braid).pd
}

/// One twist box of a plat: its crossings and the arcs entering it from above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistBox {
    /// Twist count `m_i` or `n_i`.
    pub twists: i64,
    /// Boxes on positions (0,1) are `m` boxes, on (1,2) `n` boxes.
    pub upper: bool,
    pub crossings: std::ops::Range<usize>,
    pub inputs: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct TwoBridgeDiagram {
    pub diagram: Diagram,
    pub pd: PdCode,
    pub boxes: Vec<TwistBox>,
}

/// Plat on three positions: full-twist boxes `m_1, n_1, ..., m_k, n_k` from
/// top to bottom, `m` boxes on positions (0,1) and `n` boxes on (1,2).
pub fn twobridge_diagram(twists: &[(i64, i64)]) -> Result<Diagram, DiagramError> {
    twobridge_plat(twists).map(|t| t.diagram)
}

pub fn twobridge_plat(twists: &[(i64, i64)]) -> Result<TwoBridgeDiagram, DiagramError> {
    if twists.is_empty() {
        return Err(DiagramError::EmptyTwists);
    }
    let mut xs = Vec::new();
    let mut spans = Vec::new();
    for &(m, n) in twists {
        for (twists, pos) in [(m, 0usize), (n, 1)] {
            let start = xs.len();
            let nw_over = twists < 0;
            for _ in 0..2 * twists.unsigned_abs() {
                xs.push(TangleCrossing { pos, nw_over });
            }
            spans.push((twists, pos, start..xs.len()));
        }
    }
    let t = trace_tangle(3, &xs, Closure::Plat3);
    let r = traced_diagram(&t)?;
    // entering arcs are read at the first crossing below each box top; empty
    // boxes have none, so their inputs carry through to the next crossing
    let mut boxes = Vec::with_capacity(spans.len());
    for (twists, pos, range) in spans {
        let inputs = if range.is_empty() {
            [usize::MAX; 2]
        } else {
            let k = range.start;
            let arc = |p: usize| r.arc_of_edge[&t.port_label[k][p]];
            [arc(NW), arc(NE)]
        };
        boxes.push(TwistBox { twists, upper: pos == 0, crossings: range, inputs });
    }
    Ok(TwoBridgeDiagram { diagram: r.diagram, pd: t.pd, boxes })
}

// ---- knot tables ----

#[derive(Deserialize)]
struct TableLine {
    name: String,
    pd: serde_json::Value,
}

/// JSON lines `{"name": ..., "pd": [[a,b,c,d], ...]}`; blank lines are skipped.
pub fn parse_table(reader: impl BufRead) -> Result<Vec<(String, PdCode)>, DiagramError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| DiagramError::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: TableLine =
            serde_json::from_str(&line).map_err(|e| DiagramError::syntax(e.to_string()).at_line(i + 1))?;
        let pd = pd_from_value(&entry.pd).map_err(|e| e.at_line(i + 1))?;
        out.push((entry.name, pd));
    }
    Ok(out)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<(String, PdCode)>, DiagramError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| DiagramError::Io(format!("{}: {e}", path.display())))?;
    parse_table(std::io::BufReader::new(file))
}
