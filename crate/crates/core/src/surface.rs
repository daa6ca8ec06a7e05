//! Fat graphs dual to pants decompositions, maximal trees and the derived
//! surface-group presentation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    #[serde(rename = "tri")]
    Trivalent,
    #[serde(rename = "uni")]
    Univalent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub kind: VertexKind,
    /// Counterclockwise for trivalent vertices.
    pub incident: Vec<(usize, End)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Interior,
    Boundary,
}

/// One corner of a trivalent vertex: the `pos`-th incidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub vertex: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PantsSurface {
    pub genus: usize,
    pub boundary: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub ids: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {:?}", self.invariant, self.message, self.ids)
    }
}

fn violation(invariant: &str, ids: Vec<usize>, message: impl Into<String>) -> Violation {
    Violation { invariant: invariant.into(), ids, message: message.into() }
}

impl PantsSurface {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface serializes")
    }

    pub fn graph(&self) -> FatGraph {
        FatGraph { vertices: self.vertices.clone(), edges: self.edges.clone() }
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    fn v(&self, id: usize) -> &Vertex {
        self.vertex(id).expect("vertex id checked by validate")
    }

    fn e(&self, id: usize) -> &Edge {
        self.edge(id).expect("edge id checked by validate")
    }

    pub fn is_trivalent(&self, id: usize) -> bool {
        self.vertex(id).map(|v| v.kind == VertexKind::Trivalent).unwrap_or(false)
    }

    pub fn edge_kind(&self, id: usize) -> EdgeKind {
        let e = self.e(id);
        if self.is_trivalent(e.tail) && self.is_trivalent(e.head) {
            EdgeKind::Interior
        } else {
            EdgeKind::Boundary
        }
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        self.edge_ids().into_iter().filter(|&e| self.edge_kind(e) == EdgeKind::Interior).collect()
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        self.edge_ids().into_iter().filter(|&e| self.edge_kind(e) == EdgeKind::Boundary).collect()
    }

    pub fn trivalent_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> =
            self.vertices.iter().filter(|v| v.kind == VertexKind::Trivalent).map(|v| v.id).collect();
        ids.sort_unstable();
        ids
    }

    /// Incidence `(edge, end)` at a slot.
    pub fn at(&self, s: Slot) -> (usize, End) {
        self.v(s.vertex).incident[s.pos]
    }

    /// Slot where the given end of an edge attaches.
    pub fn slot_of(&self, edge: usize, end: End) -> Slot {
        let e = self.e(edge);
        let vid = if end == End::Tail { e.tail } else { e.head };
        let pos = self
            .v(vid)
            .incident
            .iter()
            .position(|&(id, en)| id == edge && en == end)
            .expect("incidence checked by validate");
        Slot { vertex: vid, pos }
    }

    /// The slot at the opposite end of the same edge.
    pub fn opposite(&self, s: Slot) -> Slot {
        let (edge, end) = self.at(s);
        self.slot_of(edge, end.flip())
    }

    /// The slot `k` steps counterclockwise from `s`.
    pub fn next(&self, s: Slot, k: usize) -> Slot {
        let n = self.v(s.vertex).incident.len();
        Slot { vertex: s.vertex, pos: (s.pos + k) % n }
    }

    /// Edges incident to a trivalent vertex in counterclockwise order from `s`.
    pub fn ccw_from(&self, s: Slot) -> [Slot; 3] {
        [s, self.next(s, 1), self.next(s, 2)]
    }

    /// The trivalent endpoint slot of a boundary edge.
    pub fn boundary_slot(&self, edge: usize) -> Slot {
        let e = self.e(edge);
        if self.is_trivalent(e.tail) {
            self.slot_of(edge, End::Tail)
        } else {
            self.slot_of(edge, End::Head)
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut vids = BTreeSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id) {
                out.push(violation("unique vertex ids", vec![v.id], "duplicate vertex id"));
            }
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id) {
                out.push(violation("unique edge ids", vec![e.id], "duplicate edge id"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for v in &self.vertices {
            let want = match v.kind {
                VertexKind::Trivalent => 3,
                VertexKind::Univalent => 1,
            };
            if v.incident.len() != want {
                out.push(violation(
                    "vertex valence",
                    vec![v.id],
                    format!("expected {want} incidences, found {}", v.incident.len()),
                ));
            }
            for &(eid, end) in &v.incident {
                match self.edge(eid) {
                    None => out.push(violation("incidence references edge", vec![v.id, eid], "unknown edge")),
                    Some(e) => {
                        let owner = if end == End::Tail { e.tail } else { e.head };
                        if owner != v.id {
                            out.push(violation(
                                "incidence matches edge endpoints",
                                vec![v.id, eid],
                                format!("edge {eid} {end:?} is vertex {owner}"),
                            ));
                        }
                    }
                }
            }
        }
        for e in &self.edges {
            for (vid, end) in [(e.tail, End::Tail), (e.head, End::Head)] {
                match self.vertex(vid) {
                    None => out.push(violation("edge endpoints exist", vec![e.id, vid], "unknown vertex")),
                    Some(v) => {
                        let n = v.incident.iter().filter(|&&(id, en)| id == e.id && en == end).count();
                        if n != 1 {
                            out.push(violation(
                                "edge listed once at each end",
                                vec![e.id, vid],
                                format!("{end:?} end listed {n} times"),
                            ));
                        }
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for e in &self.edges {
            if !self.is_trivalent(e.tail) && !self.is_trivalent(e.head) {
                out.push(violation("boundary edge has one univalent end", vec![e.id], "both ends univalent"));
            }
        }
        let (g, b) = (self.genus as i64, self.boundary as i64);
        if 2 - 2 * g - b >= 0 {
            out.push(violation("negative Euler characteristic", vec![], format!("g={g}, b={b}")));
        }
        let ntri = self.trivalent_ids().len() as i64;
        let nuni = self.vertices.len() as i64 - ntri;
        if ntri != 2 * g - 2 + b {
            out.push(violation("trivalent count", vec![], format!("expected {}, found {ntri}", 2 * g - 2 + b)));
        }
        if nuni != b {
            out.push(violation("univalent count", vec![], format!("expected {b}, found {nuni}")));
        }
        if self.edges.len() as i64 != 3 * g - 3 + 2 * b {
            out.push(violation(
                "edge count",
                vec![],
                format!("expected {}, found {}", 3 * g - 3 + 2 * b, self.edges.len()),
            ));
        }
        if !self.connected() {
            out.push(violation("connected", vec![], "graph is disconnected"));
        }
        if let Some(t) = &self.tree {
            if out.is_empty() {
                if let Err(err) = self.check_tree(&t.iter().copied().collect()) {
                    out.push(violation("maximal tree", t.clone(), err.to_string()));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Schema(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")))
        }
    }

    fn connected(&self) -> bool {
        let Some(start) = self.vertices.iter().map(|v| v.id).min() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(eid, _) in &self.v(v).incident {
                let e = self.e(eid);
                for w in [e.tail, e.head] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Checks that `tree` spans the graph without cycles.
    pub fn check_tree(&self, tree: &BTreeSet<usize>) -> Result<()> {
        if tree.len() + 1 != self.vertices.len() {
            return Err(Error::Schema(format!(
                "tree has {} edges, expected {}",
                tree.len(),
                self.vertices.len() - 1
            )));
        }
        let mut parent: BTreeMap<usize, usize> = self.vertices.iter().map(|v| (v.id, v.id)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            p.insert(x, r);
            r
        }
        for &eid in tree {
            let e = self.edge(eid).ok_or_else(|| Error::Schema(format!("tree edge {eid} unknown")))?;
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a == b {
                return Err(Error::Schema(format!("tree edge {eid} closes a cycle")));
            }
            parent.insert(a, b);
        }
        Ok(())
    }

    /// Spanning tree found breadth-first from the lowest vertex id. Edges in
    /// `seed` are preferred in the given order, then lower ids.
    pub fn maximal_tree(&self, seed: Option<&[usize]>) -> Result<BTreeSet<usize>> {
        let rank = |eid: usize| -> (usize, usize) {
            match seed.and_then(|s| s.iter().position(|&x| x == eid)) {
                Some(p) => (0, p),
                None => (1, eid),
            }
        };
        let start = self.vertices.iter().map(|v| v.id).min().ok_or_else(|| Error::Schema("empty graph".into()))?;
        let mut seen = BTreeSet::from([start]);
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let mut inc: Vec<usize> = self.v(v).incident.iter().map(|&(e, _)| e).collect();
            inc.sort_by_key(|&e| rank(e));
            inc.dedup();
            for eid in inc {
                let e = self.e(eid);
                let w = if e.tail == v { e.head } else { e.tail };
                if seen.insert(w) {
                    tree.insert(eid);
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return Err(Error::Schema("graph is disconnected".into()));
        }
        Ok(tree)
    }

    /// The stored tree if present, otherwise the default maximal tree.
    pub fn tree_or_default(&self) -> Result<BTreeSet<usize>> {
        match &self.tree {
            Some(t) => {
                let t: BTreeSet<usize> = t.iter().copied().collect();
                self.check_tree(&t)?;
                Ok(t)
            }
            None => self.maximal_tree(None),
        }
    }

    /// Root of the universal-cover walk: the lowest trivalent vertex id.
    pub fn root(&self) -> usize {
        self.trivalent_ids()[0]
    }

    /// Interior edges outside the tree, sorted by id.
    pub fn complement(&self, tree: &BTreeSet<usize>) -> Vec<usize> {
        self.interior_edges().into_iter().filter(|e| !tree.contains(e)).collect()
    }

    pub fn presentation(&self, tree: &BTreeSet<usize>) -> Result<Presentation> {
        self.check_tree(tree)?;
        let comp = self.complement(tree);
        if comp.len() != self.genus {
            return Err(Error::Schema(format!(
                "tree complement has {} interior edges, genus is {}",
                comp.len(),
                self.genus
            )));
        }
        Presentation::derive(self, tree, &comp)
    }

    /// Tree-path of edges from the root to every trivalent vertex.
    pub fn tree_paths(&self, tree: &BTreeSet<usize>) -> BTreeMap<usize, Vec<usize>> {
        let root = self.root();
        let mut paths = BTreeMap::from([(root, Vec::new())]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(eid, _) in &self.v(v).incident {
                if !tree.contains(&eid) || self.edge_kind(eid) != EdgeKind::Interior {
                    continue;
                }
                let e = self.e(eid);
                let w = if e.tail == v { e.head } else { e.tail };
                if !paths.contains_key(&w) {
                    let mut p = paths[&v].clone();
                    p.push(eid);
                    paths.insert(w, p);
                    queue.push_back(w);
                }
            }
        }
        paths
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// 1-based; `α_i` for `i ≤ g` sits at the tail of `u_i`, `α_{g+i}` at its head.
    Alpha(usize),
    Beta(usize),
    Delta(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Alpha(i) => write!(f, "alpha{i}"),
            Generator::Beta(i) => write!(f, "beta{i}"),
            Generator::Delta(i) => write!(f, "delta{i}"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("unknown generator {s:?}"));
        let (name, idx) = s.find(|c: char| c.is_ascii_digit()).map(|p| s.split_at(p)).ok_or_else(bad)?;
        let i: usize = idx.parse().map_err(|_| bad())?;
        match name {
            "alpha" | "a" => Ok(Generator::Alpha(i)),
            "beta" | "b" => Ok(Generator::Beta(i)),
            "delta" | "d" => Ok(Generator::Delta(i)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator) -> Self {
        Letter { gen, inverse: false }
    }
    pub fn inv(gen: Generator) -> Self {
        Letter { gen, inverse: true }
    }
}

pub type Word = Vec<Letter>;

pub fn word_inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| Letter { gen: l.gen, inverse: !l.inverse }).collect()
}

pub fn format_word(w: &[Letter]) -> String {
    w.iter()
        .map(|l| if l.inverse { format!("{}^-1", l.gen) } else { l.gen.to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses words like `"alpha1 beta1^-1 delta1"`.
pub fn parse_word(s: &str) -> Result<Word> {
    s.split_whitespace()
        .map(|tok| {
            let (g, inverse) = match tok.strip_suffix("^-1") {
                Some(g) => (g, true),
                None => (tok, false),
            };
            Ok(Letter { gen: g.parse()?, inverse })
        })
        .collect()
}

/// A generator located at a slot of the lifted maximal tree.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotGenerator {
    pub gen: Generator,
    pub edge: usize,
    pub slot: Slot,
    /// Tree edges from the root to the slot's vertex.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub genus: usize,
    pub alphas: Vec<SlotGenerator>,
    /// Complement edge `u_i` for each `β_i`.
    pub betas: Vec<usize>,
    pub deltas: Vec<SlotGenerator>,
    /// The S₀ relation obtained by walking the fattened tree.
    pub relation: Word,
    /// `α_{g+i} β_i⁻¹ α_i β_i`.
    pub hnn: Vec<Word>,
    /// Word for the curve at every trivalent-vertex slot.
    pub slot_words: BTreeMap<Slot, Word>,
}

impl Presentation {
    fn derive(s: &PantsSurface, tree: &BTreeSet<usize>, comp: &[usize]) -> Result<Self> {
        let g = comp.len();
        let paths = s.tree_paths(tree);
        let mut gen_at: BTreeMap<Slot, Generator> = BTreeMap::new();
        let mut alphas = Vec::new();
        for (i, &u) in comp.iter().enumerate() {
            let sl = s.slot_of(u, End::Tail);
            gen_at.insert(sl, Generator::Alpha(i + 1));
            alphas.push(SlotGenerator { gen: Generator::Alpha(i + 1), edge: u, slot: sl, path: paths[&sl.vertex].clone() });
        }
        for (i, &u) in comp.iter().enumerate() {
            let sl = s.slot_of(u, End::Head);
            gen_at.insert(sl, Generator::Alpha(g + i + 1));
            alphas.push(SlotGenerator {
                gen: Generator::Alpha(g + i + 1),
                edge: u,
                slot: sl,
                path: paths[&sl.vertex].clone(),
            });
        }
        let mut deltas = Vec::new();
        for (j, b) in s.boundary_edges().into_iter().enumerate() {
            let sl = s.boundary_slot(b);
            gen_at.insert(sl, Generator::Delta(j + 1));
            deltas.push(SlotGenerator { gen: Generator::Delta(j + 1), edge: b, slot: sl, path: paths[&sl.vertex].clone() });
        }
        let jumps = |sl: Slot| -> bool {
            let (e, _) = s.at(sl);
            tree.contains(&e) && s.edge_kind(e) == EdgeKind::Interior
        };
        // Walk from `start`, stopping before processing `stop`.
        let walk = |start: Slot, stop: Slot| -> Word {
            let mut out = Vec::new();
            let mut cur = start;
            let mut first = true;
            loop {
                if !first && cur == stop {
                    break;
                }
                first = false;
                if jumps(cur) {
                    cur = s.next(s.opposite(cur), 1);
                } else {
                    out.push(Letter::new(gen_at[&cur]));
                    cur = s.next(cur, 1);
                }
            }
            out
        };
        let root = Slot { vertex: s.root(), pos: 0 };
        let relation = walk(root, root);
        let mut slot_words = BTreeMap::new();
        for v in s.trivalent_ids() {
            for pos in 0..3 {
                let sl = Slot { vertex: v, pos };
                let w = if jumps(sl) {
                    let o = s.opposite(sl);
                    let start = s.next(o, 1);
                    if start == o {
                        Vec::new()
                    } else {
                        walk(start, o)
                    }
                } else {
                    vec![Letter::new(gen_at[&sl])]
                };
                slot_words.insert(sl, w);
            }
        }
        let hnn = (1..=g)
            .map(|i| {
                vec![
                    Letter::new(Generator::Alpha(g + i)),
                    Letter::inv(Generator::Beta(i)),
                    Letter::new(Generator::Alpha(i)),
                    Letter::new(Generator::Beta(i)),
                ]
            })
            .collect();
        Ok(Presentation { genus: g, alphas, betas: comp.to_vec(), deltas, relation, hnn, slot_words })
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self.alphas.iter().map(|a| a.gen).collect();
        out.extend((1..=self.betas.len()).map(Generator::Beta));
        out.extend(self.deltas.iter().map(|d| d.gen));
        out
    }

    /// All relations: the S₀ word followed by the HNN words.
    pub fn relations(&self) -> Vec<Word> {
        let mut out = vec![self.relation.clone()];
        out.extend(self.hnn.iter().cloned());
        out
    }

    /// The S₀ relation with each `α_{g+i}` replaced by `β_i⁻¹ α_i⁻¹ β_i`.
    pub fn one_relator_word(&self) -> Word {
        let g = self.genus;
        let mut out = Vec::new();
        for l in &self.relation {
            match l.gen {
                Generator::Alpha(k) if k > g => {
                    let i = k - g;
                    let sub = vec![
                        Letter::inv(Generator::Beta(i)),
                        Letter::inv(Generator::Alpha(i)),
                        Letter::new(Generator::Beta(i)),
                    ];
                    if l.inverse {
                        out.extend(word_inverse(&sub));
                    } else {
                        out.extend(sub);
                    }
                }
                _ => out.push(*l),
            }
        }
        out
    }

    /// Rank of the abelianization of the one-relator presentation.
    pub fn abelian_rank(&self) -> usize {
        let gens = 2 * self.genus + self.deltas.len();
        let word = self.one_relator_word();
        let mut exps: BTreeMap<Generator, i64> = BTreeMap::new();
        for l in &word {
            *exps.entry(l.gen).or_default() += if l.inverse { -1 } else { 1 };
        }
        let nonzero = exps.values().any(|&x| x != 0);
        gens - usize::from(nonzero)
    }
}
