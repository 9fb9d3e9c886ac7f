//! Combinatorial ideal triangulations of marked surfaces in which every
//! puncture sits inside a self-folded triangle, their blocks and adjacency
//! quivers with potential, and the unpunctured double cover.
//!
//! A triangle lists its three sides counterclockwise. Side `k` runs from
//! corner `k` to corner `k+1`, and an arrow goes from side `k+1` to side `k`.
//! Marked points are the classes of corners under edge gluing; an internal
//! edge glued in two slots reverses direction between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::algebra::{apply_quiver_morphism, AlgebraError, Path, PathExpr, Potential, Qp, Quiver, QuiverMorphism};
use crate::involution::{find_admissible, Involution, InvolutionError};
use crate::linalg::{fmt_q, Q};
use crate::skew::{skew_qp, ArrowCase, SkewError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("edge {0} is not glued like a surface edge")]
    NonManifoldEdge(String),
    #[error("marked point {0} is pinched")]
    NonManifoldVertex(String),
    #[error("puncture {0} does not lie in a self-folded triangle")]
    PunctureNotSelfFolded(String),
    #[error("triangle {0} shares sides with two self-folded triangles")]
    AdjacentSelfFoldedPair(String),
    #[error("self-folded triangle {0} is malformed")]
    MalformedSelfFold(String),
    #[error("the once-punctured monogon is excluded")]
    OncePuncturedMonogon,
    #[error("triangulation is not connected")]
    Disconnected,
    #[error("unknown triangle or edge {0}")]
    Unknown(String),
    #[error("duplicate id {0}")]
    Duplicate(String),
    #[error("triangle {0} matches no block type")]
    UnclassifiableTriangle(String),
    #[error("adjacency quiver has a loop or 2-cycle at {0}")]
    DegenerateQuiver(String),
    #[error("cover cross-check failed: {0}")]
    CrossCheckFailure(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

impl From<InvolutionError> for SurfaceError {
    fn from(e: InvolutionError) -> Self {
        SurfaceError::Skew(SkewError::Action(e))
    }
}

impl SurfaceError {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceError::NonManifoldEdge(_) => "NonManifoldEdge",
            SurfaceError::NonManifoldVertex(_) => "NonManifoldVertex",
            SurfaceError::PunctureNotSelfFolded(_) => "PunctureNotSelfFolded",
            SurfaceError::AdjacentSelfFoldedPair(_) => "AdjacentSelfFoldedPair",
            SurfaceError::MalformedSelfFold(_) => "MalformedSelfFold",
            SurfaceError::OncePuncturedMonogon => "OncePuncturedMonogon",
            SurfaceError::Disconnected => "Disconnected",
            SurfaceError::Unknown(_) => "Unknown",
            SurfaceError::Duplicate(_) => "Duplicate",
            SurfaceError::UnclassifiableTriangle(_) => "UnclassifiableTriangle",
            SurfaceError::DegenerateQuiver(_) => "DegenerateQuiver",
            SurfaceError::CrossCheckFailure(_) => "CrossCheckFailure",
            SurfaceError::Algebra(e) => e.name(),
            SurfaceError::Skew(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub id: String,
    pub sides: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfFold {
    pub triangle: String,
    pub loop_edge: String,
    pub radius: String,
    pub puncture: String,
}

/// A triangulation as entered, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Triangulation {
    pub triangles: Vec<Triangle>,
    pub boundary: BTreeSet<String>,
    pub self_folded: Vec<SelfFold>,
    /// Optional arrow names for the adjacency quiver, keyed by `(src, tgt)`.
    pub labels: BTreeMap<(String, String), String>,
}

/// A corner: triangle index and corner position.
pub type Corner = (usize, usize);

/// The outcome of validation: marked points and topological invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInfo {
    pub genus: usize,
    pub boundary_components: usize,
    /// Number of marked points on each boundary component, sorted.
    pub marked_per_boundary: Vec<usize>,
    pub punctures: usize,
    pub arcs: usize,
    pub euler_characteristic: i64,
    /// Marked point of every corner.
    pub corner_point: BTreeMap<Corner, String>,
}

impl fmt::Display for SurfaceInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mpb: Vec<String> = self.marked_per_boundary.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "genus={}\nboundary={}\nmarked_per_boundary={}\npunctures={}\narcs={}\neuler={}",
            self.genus,
            self.boundary_components,
            mpb.join(","),
            self.punctures,
            self.arcs,
            self.euler_characteristic
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockType {
    Zero,
    I,
    II,
    IIIa,
    IIIb,
    IV,
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockType::Zero => "0",
            BlockType::I => "I",
            BlockType::II => "II",
            BlockType::IIIa => "IIIa",
            BlockType::IIIb => "IIIb",
            BlockType::IV => "IV",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockType,
    pub triangle: String,
    /// Arcs of the block, including the radius of an attached self-folded triangle.
    pub arcs: Vec<String>,
}

/// Where an arrow of the adjacency quiver comes from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurfArrow {
    pub triangle: String,
    pub from_slot: usize,
    pub to_slot: usize,
    /// True for the copy through the radius of an attached self-folded triangle.
    pub radius: bool,
}

/// The adjacency quiver with potential, its action and arrow provenance.
#[derive(Debug, Clone)]
pub struct AdjacencyQp {
    pub qp: Qp,
    pub sigma: Involution,
    pub provenance: BTreeMap<String, SurfArrow>,
}

impl Triangulation {
    pub fn new(
        triangles: Vec<Triangle>,
        boundary: BTreeSet<String>,
        self_folded: Vec<SelfFold>,
        labels: BTreeMap<(String, String), String>,
    ) -> Self {
        Triangulation { triangles, boundary, self_folded, labels }
    }

    pub fn triangle_index(&self, id: &str) -> Option<usize> {
        self.triangles.iter().position(|t| t.id == id)
    }

    pub fn is_boundary(&self, e: &str) -> bool {
        self.boundary.contains(e)
    }

    /// All slots `(triangle, side)` holding edge `e`.
    pub fn slots(&self, e: &str) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if tri.sides[k] == e {
                    out.push((t, k));
                }
            }
        }
        out
    }

    /// Every edge id, in order of first appearance.
    pub fn edges(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in &self.triangles {
            for s in &t.sides {
                if seen.insert(s.clone()) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Internal arcs, sorted by id.
    pub fn arcs(&self) -> Vec<String> {
        let mut a: Vec<String> = self.edges().into_iter().filter(|e| !self.is_boundary(e)).collect();
        a.sort();
        a
    }

    pub fn self_fold_of_triangle(&self, t: &str) -> Option<&SelfFold> {
        self.self_folded.iter().find(|s| s.triangle == t)
    }

    /// The self-folded triangle whose loop is `e`, if any.
    pub fn self_fold_with_loop(&self, e: &str) -> Option<&SelfFold> {
        self.self_folded.iter().find(|s| s.loop_edge == e)
    }

    pub fn is_self_folded(&self, t: usize) -> bool {
        self.self_fold_of_triangle(&self.triangles[t].id).is_some()
    }

    fn corner_index(t: usize, k: usize) -> usize {
        3 * t + k
    }

    /// Glues corners along every internal edge.
    fn glue_corners(&self) -> UnionFind<usize> {
        let mut uf = UnionFind::new(3 * self.triangles.len());
        for e in self.edges() {
            if self.is_boundary(&e) {
                continue;
            }
            let s = self.slots(&e);
            if s.len() != 2 {
                continue;
            }
            let ((t, k), (u, l)) = (s[0], s[1]);
            uf.union(Self::corner_index(t, k), Self::corner_index(u, (l + 1) % 3));
            uf.union(Self::corner_index(t, (k + 1) % 3), Self::corner_index(u, l));
        }
        uf
    }

    /// Checks every standing assumption and computes the invariants.
    pub fn validate(&self) -> Result<SurfaceInfo, SurfaceError> {
        let mut ids = BTreeSet::new();
        for t in &self.triangles {
            if !ids.insert(t.id.clone()) {
                return Err(SurfaceError::Duplicate(t.id.clone()));
            }
        }
        for b in &self.boundary {
            if self.slots(b).is_empty() {
                return Err(SurfaceError::Unknown(b.clone()));
            }
        }
        for e in self.edges() {
            let n = self.slots(&e).len();
            let want = if self.is_boundary(&e) { 1 } else { 2 };
            if n != want {
                return Err(SurfaceError::NonManifoldEdge(e));
            }
        }
        let mut seen_p = BTreeSet::new();
        for sf in &self.self_folded {
            let t = self.triangle_index(&sf.triangle).ok_or_else(|| SurfaceError::Unknown(sf.triangle.clone()))?;
            if !seen_p.insert(sf.puncture.clone()) {
                return Err(SurfaceError::Duplicate(sf.puncture.clone()));
            }
            if self.is_boundary(&sf.loop_edge) {
                return Err(SurfaceError::OncePuncturedMonogon);
            }
            let sides = &self.triangles[t].sides;
            let shape = (0..3).any(|k| {
                sides[k] == sf.loop_edge && sides[(k + 1) % 3] == sf.radius && sides[(k + 2) % 3] == sf.radius
            });
            if !shape || sf.loop_edge == sf.radius {
                return Err(SurfaceError::MalformedSelfFold(sf.triangle.clone()));
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if self.is_self_folded(t) {
                continue;
            }
            if tri.sides.iter().any(|s| self.self_folded.iter().any(|sf| &sf.radius == s)) {
                return Err(SurfaceError::MalformedSelfFold(tri.id.clone()));
            }
            let loops = tri.sides.iter().filter(|s| self.self_fold_with_loop(s).is_some()).count();
            if loops >= 2 {
                return Err(SurfaceError::AdjacentSelfFoldedPair(tri.id.clone()));
            }
        }
        // connectivity through shared edges
        let mut tuf = UnionFind::new(self.triangles.len());
        for e in self.edges() {
            let s = self.slots(&e);
            for w in s.windows(2) {
                tuf.union(w[0].0, w[1].0);
            }
        }
        if (0..self.triangles.len()).any(|t| !tuf.equiv(0, t)) {
            return Err(SurfaceError::Disconnected);
        }
        let mut uf = self.glue_corners();
        // name the marked points
        let mut rep_name: BTreeMap<usize, String> = BTreeMap::new();
        for sf in &self.self_folded {
            let t = self.triangle_index(&sf.triangle).expect("checked");
            let k = (0..3).find(|&k| self.triangles[t].sides[k] == sf.loop_edge).expect("checked");
            // the apex sits opposite the loop
            let apex = uf.find_mut(Self::corner_index(t, (k + 2) % 3));
            rep_name.insert(apex, sf.puncture.clone());
        }
        let mut next = 0;
        let mut corner_point = BTreeMap::new();
        for t in 0..self.triangles.len() {
            for k in 0..3 {
                let r = uf.find_mut(Self::corner_index(t, k));
                let name = rep_name.entry(r).or_insert_with(|| {
                    next += 1;
                    format!("m{next}")
                });
                corner_point.insert((t, k), name.clone());
            }
        }
        // boundary ends at every marked point
        let mut ends: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for b in &self.boundary {
            let (t, k) = self.slots(b)[0];
            ends.entry(corner_point[&(t, k)].clone()).or_default().0 += 1;
            ends.entry(corner_point[&(t, (k + 1) % 3)].clone()).or_default().1 += 1;
        }
        let points: BTreeSet<String> = corner_point.values().cloned().collect();
        let punctures: Vec<&String> = points.iter().filter(|p| !ends.contains_key(*p)).collect();
        for p in &punctures {
            if !self.self_folded.iter().any(|sf| &&sf.puncture == p) {
                return Err(SurfaceError::PunctureNotSelfFolded((*p).clone()));
            }
        }
        for sf in &self.self_folded {
            if ends.contains_key(&sf.puncture) {
                return Err(SurfaceError::MalformedSelfFold(sf.triangle.clone()));
            }
        }
        for (p, (out, inn)) in &ends {
            if *out != 1 || *inn != 1 {
                return Err(SurfaceError::NonManifoldVertex(p.clone()));
            }
        }
        // boundary components: cycles of boundary segments through marked points
        let mut puf = UnionFind::new(points.len());
        let pidx: BTreeMap<&String, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for b in &self.boundary {
            let (t, k) = self.slots(b)[0];
            puf.union(pidx[&corner_point[&(t, k)]], pidx[&corner_point[&(t, (k + 1) % 3)]]);
        }
        let mut comp: BTreeMap<usize, usize> = BTreeMap::new();
        for p in ends.keys() {
            *comp.entry(puf.find_mut(pidx[p])).or_default() += 1;
        }
        let b = comp.len();
        let mut marked_per_boundary: Vec<usize> = comp.values().cloned().collect();
        marked_per_boundary.sort();
        let v = points.len() as i64;
        let e = self.edges().len() as i64;
        let f = self.triangles.len() as i64;
        let chi = v - e + f;
        let twice_g = 2 - chi - b as i64;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(SurfaceError::NonManifoldVertex("euler characteristic".into()));
        }
        Ok(SurfaceInfo {
            genus: (twice_g / 2) as usize,
            boundary_components: b,
            marked_per_boundary,
            punctures: punctures.len(),
            arcs: self.arcs().len(),
            euler_characteristic: chi,
            corner_point,
        })
    }

    /// Assigns a block type to every triangle that is not self-folded.
    pub fn block_decompose(&self) -> Result<Vec<Block>, SurfaceError> {
        self.validate()?;
        self.blocks()
    }

    fn blocks(&self) -> Result<Vec<Block>, SurfaceError> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            if self.is_self_folded(t) {
                continue;
            }
            let nb = tri.sides.iter().filter(|s| self.is_boundary(s)).count();
            let lp = (0..3).find(|&k| self.self_fold_with_loop(&tri.sides[k]).is_some());
            let kind = match (lp, nb) {
                (None, 3) | (None, 2) => BlockType::Zero,
                (None, 1) => BlockType::I,
                (None, 0) => BlockType::II,
                (Some(k), 1) => {
                    // sides in order (loop, next, next-next)
                    if self.is_boundary(&tri.sides[(k + 1) % 3]) {
                        BlockType::IIIa
                    } else {
                        BlockType::IIIb
                    }
                }
                (Some(_), 0) => BlockType::IV,
                _ => return Err(SurfaceError::UnclassifiableTriangle(tri.id.clone())),
            };
            let mut arcs: Vec<String> = tri.sides.iter().filter(|s| !self.is_boundary(s)).cloned().collect();
            if let Some(k) = lp {
                arcs.push(self.self_fold_with_loop(&tri.sides[k]).expect("loop").radius.clone());
            }
            out.push(Block { kind, triangle: tri.id.clone(), arcs });
        }
        Ok(out)
    }

    /// The adjacency quiver with potential and the action exchanging the
    /// loop and radius of every self-folded triangle.
    pub fn adjacency_qp(&self) -> Result<AdjacencyQp, SurfaceError> {
        self.validate()?;
        self.adjacency()
    }

    /// Adjacency QP of an already validated triangulation, or of the two
    /// disjoint sheets of an unpunctured cover.
    fn adjacency(&self) -> Result<AdjacencyQp, SurfaceError> {
        let blocks = self.blocks()?;
        let mut q = Quiver::new();
        for a in self.arcs() {
            q.add_vertex(a)?;
        }
        let mut provenance = BTreeMap::new();
        let mut by_slot: BTreeMap<(String, usize, usize, bool), String> = BTreeMap::new();
        let mut raw: Vec<(String, String, SurfArrow)> = Vec::new();
        for block in &blocks {
            let t = self.triangle_index(&block.triangle).expect("block triangle");
            let tri = &self.triangles[t];
            for k in 0..3 {
                let (from, to) = ((k + 1) % 3, k);
                let (s, d) = (&tri.sides[from], &tri.sides[to]);
                if self.is_boundary(s) || self.is_boundary(d) {
                    continue;
                }
                raw.push((s.clone(), d.clone(), SurfArrow { triangle: tri.id.clone(), from_slot: from, to_slot: to, radius: false }));
                for (x, y, flip_src) in [(s, d, true), (d, s, false)] {
                    if let Some(sf) = self.self_fold_with_loop(x) {
                        let (src, tgt) = if flip_src { (sf.radius.clone(), y.clone()) } else { (y.clone(), sf.radius.clone()) };
                        raw.push((src, tgt, SurfArrow { triangle: tri.id.clone(), from_slot: from, to_slot: to, radius: true }));
                    }
                }
            }
        }
        let mut pair_count: BTreeMap<(String, String), usize> = BTreeMap::new();
        for (s, d, _) in &raw {
            if s == d {
                return Err(SurfaceError::DegenerateQuiver(s.clone()));
            }
            *pair_count.entry((s.clone(), d.clone())).or_default() += 1;
        }
        for (s, d) in pair_count.keys() {
            if pair_count.contains_key(&(d.clone(), s.clone())) {
                return Err(SurfaceError::DegenerateQuiver(format!("{s},{d}")));
            }
        }
        for (s, d, prov) in raw {
            let key = (s.clone(), d.clone());
            let mut name = match self.labels.get(&key) {
                Some(l) if pair_count[&key] == 1 => l.clone(),
                _ => format!("{s}>{d}"),
            };
            if pair_count[&key] > 1 {
                name = format!("{name}#{}", prov.triangle);
            }
            q.add_arrow(name.clone(), s, d)?;
            by_slot.insert((prov.triangle.clone(), prov.from_slot, prov.to_slot, prov.radius), name.clone());
            provenance.insert(name, prov);
        }
        // potential
        let mut x = PathExpr::zero();
        for block in &blocks {
            let tri = &self.triangles[self.triangle_index(&block.triangle).expect("block triangle")];
            let arrow = |k: usize, radius: bool| by_slot.get(&(tri.id.clone(), (k + 1) % 3, k, radius)).cloned();
            match block.kind {
                BlockType::II => {
                    let names: Vec<String> = (0..3).map(|k| arrow(k, false).expect("type II arrow")).collect();
                    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                    x.add_term(Q::one(), Path::from_arrows(&q, &refs)?);
                }
                BlockType::IV => {
                    for radius in [false, true] {
                        // the arrow between the two ordinary arcs has no radius copy
                        let names: Vec<String> =
                            (0..3).map(|k| arrow(k, radius).or_else(|| arrow(k, false)).expect("type IV arrow")).collect();
                        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                        x.add_term(Q::one(), Path::from_arrows(&q, &refs)?);
                    }
                }
                _ => {}
            }
        }
        let potential = Potential::new(&q, &x)?;
        // the action
        let mut vmap = BTreeMap::new();
        for v in q.vertices() {
            vmap.insert(v.clone(), v.clone());
        }
        for sf in &self.self_folded {
            vmap.insert(sf.loop_edge.clone(), sf.radius.clone());
            vmap.insert(sf.radius.clone(), sf.loop_edge.clone());
        }
        let mut amap = BTreeMap::new();
        for (name, prov) in &provenance {
            let partner = if self.touches_loop(prov) {
                by_slot[&(prov.triangle.clone(), prov.from_slot, prov.to_slot, !prov.radius)].clone()
            } else {
                name.clone()
            };
            amap.insert(name.clone(), partner);
        }
        let sigma = Involution::from_maps(vmap, amap);
        Ok(AdjacencyQp { qp: Qp::new(q, potential), sigma, provenance })
    }

    fn touches_loop(&self, p: &SurfArrow) -> bool {
        let tri = &self.triangles[self.triangle_index(&p.triangle).expect("triangle")];
        self.self_fold_with_loop(&tri.sides[p.from_slot]).is_some() || self.self_fold_with_loop(&tri.sides[p.to_slot]).is_some()
    }
}

/// Name of the arc of the cover through the image of a puncture.
pub fn new_arc_name(puncture: &str) -> String {
    format!("p{puncture}")
}

/// The double cover with its involution and projection.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    pub triangulation: Triangulation,
    /// The involution on cover arcs.
    pub sigma: BTreeMap<String, String>,
    /// Cover arc ↦ arc of the base (the radius for the new arcs).
    pub projection: BTreeMap<String, String>,
    /// Puncture ↦ new arc.
    pub new_arcs: BTreeMap<String, String>,
    /// Cover triangle ↦ (base triangle, sheet is `+`).
    pub sheets: BTreeMap<String, (String, bool)>,
    /// Rescaling witness: arrow of the cover ↦ `(scalar, arrow of Q_G)`.
    pub witness: QuiverMorphism,
    /// Adjacency QP of the cover.
    pub qp: Qp,
    /// The involution induced on the cover's quiver.
    pub involution: Involution,
}

fn signed(x: &str, plus: bool) -> String {
    format!("{x}{}", if plus { "+" } else { "-" })
}

/// Cuts every self-folded triangle away, doubles the rest and glues the two
/// sheets along one new arc per puncture; then checks that the adjacency QP
/// of the result is the skew QP of the base, up to renaming and rescaling.
pub fn double_cover(t: &Triangulation) -> Result<DoubleCover, SurfaceError> {
    t.validate()?;
    let mut triangles = Vec::new();
    let mut boundary = BTreeSet::new();
    let mut sheets = BTreeMap::new();
    let mut sigma = BTreeMap::new();
    let mut projection = BTreeMap::new();
    let mut new_arcs = BTreeMap::new();
    for sf in &t.self_folded {
        new_arcs.insert(sf.puncture.clone(), new_arc_name(&sf.puncture));
    }
    for plus in [true, false] {
        for (i, tri) in t.triangles.iter().enumerate() {
            if t.is_self_folded(i) {
                continue;
            }
            let sides = tri.sides.clone().map(|s| match t.self_fold_with_loop(&s) {
                Some(sf) => new_arc_name(&sf.puncture),
                None => signed(&s, plus),
            });
            for (s, base) in sides.iter().zip(tri.sides.iter()) {
                if t.is_boundary(base) {
                    boundary.insert(s.clone());
                }
                let proj = match t.self_fold_with_loop(base) {
                    Some(sf) => sf.radius.clone(),
                    None => base.clone(),
                };
                projection.insert(s.clone(), proj);
                let partner = match t.self_fold_with_loop(base) {
                    Some(_) => s.clone(),
                    None => signed(base, !plus),
                };
                if !t.is_boundary(base) {
                    sigma.insert(s.clone(), partner);
                }
            }
            let id = signed(&tri.id, plus);
            sheets.insert(id.clone(), (tri.id.clone(), plus));
            triangles.push(Triangle { id, sides });
        }
    }
    let mut labels = BTreeMap::new();
    for ((s, d), name) in &t.labels {
        if t.self_fold_with_loop(s).is_none()
            && t.self_fold_with_loop(d).is_none()
            && !t.self_folded.iter().any(|sf| &sf.radius == s || &sf.radius == d)
        {
            for plus in [true, false] {
                labels.insert((signed(s, plus), signed(d, plus)), signed(name, plus));
            }
        }
    }
    let cover = Triangulation::new(triangles, boundary, Vec::new(), labels);
    // without punctures the two sheets stay apart, each a copy of the base
    if !t.self_folded.is_empty() {
        cover.validate()?;
    }
    let (witness, cadj) = cross_check(t, &cover, &sheets)?;
    let involution = cover_involution(&cadj, &sigma, &sheets)?;
    Ok(DoubleCover { triangulation: cover, sigma, projection, new_arcs, sheets, witness, qp: cadj.qp, involution })
}

/// Exchanges the two sheets: arcs by `sigma`, and each arrow with the arrow
/// of the other sheet coming from the same corner.
fn cover_involution(
    cadj: &AdjacencyQp,
    sigma: &BTreeMap<String, String>,
    sheets: &BTreeMap<String, (String, bool)>,
) -> Result<Involution, SurfaceError> {
    let flip: BTreeMap<&String, &String> = sheets
        .iter()
        .filter_map(|(id, (base, plus))| sheets.iter().find(|(_, (b, p))| b == base && p != plus).map(|(other, _)| (id, other)))
        .collect();
    let mut by_corner = BTreeMap::new();
    for (name, prov) in &cadj.provenance {
        by_corner.insert((prov.triangle.clone(), prov.from_slot, prov.to_slot), name.clone());
    }
    let mut amap = BTreeMap::new();
    for (name, prov) in &cadj.provenance {
        let partner = by_corner
            .get(&(flip[&prov.triangle].clone(), prov.from_slot, prov.to_slot))
            .ok_or_else(|| SurfaceError::CrossCheckFailure(format!("arrow {name} has no mirror")))?;
        amap.insert(name.clone(), partner.clone());
    }
    let vmap = cadj.qp.quiver.vertices().iter().map(|v| (v.clone(), sigma[v].clone())).collect();
    Ok(Involution::from_maps(vmap, amap))
}

/// Builds the map `Q(τ̃) → Q(τ)_G` from provenance and finds arrow scalars
/// carrying `S(τ̃)` to `S(τ)_G`.
fn cross_check(
    base: &Triangulation,
    cover: &Triangulation,
    sheets: &BTreeMap<String, (String, bool)>,
) -> Result<(QuiverMorphism, AdjacencyQp), SurfaceError> {
    let fail = |m: String| SurfaceError::CrossCheckFailure(m);
    let adj = base.adjacency_qp()?;
    let choice = find_admissible(&adj.qp.quiver, &adj.sigma)?.ok_or_else(|| fail("no admissible choice".into()))?;
    let ctx = skew_qp(&adj.qp, &adj.sigma, &choice)?;
    let cadj = cover.adjacency()?;
    let mut m = QuiverMorphism::default();
    for v in cadj.qp.quiver.vertices() {
        let img = if let Some(sf) = base.self_folded.iter().find(|sf| new_arc_name(&sf.puncture) == *v) {
            ctx.orbit_rep(&sf.loop_edge).to_string()
        } else {
            v.clone()
        };
        m.vertex_map.insert(v.clone(), img);
    }
    // Q_G arrows indexed by (base triangle, slots, sheet)
    let mut g_index: BTreeMap<(String, usize, usize, bool), String> = BTreeMap::new();
    for (name, prov) in &ctx.arrow_prov {
        let sp = &adj.provenance[&prov.rep];
        let plus = prov.sign == crate::skew::Sign::Plus;
        if prov.case == ArrowCase::WW {
            return Err(fail(format!("unexpected arrow between moved vertices {name}")));
        }
        g_index.insert((sp.triangle.clone(), sp.from_slot, sp.to_slot, plus), name.clone());
    }
    for (name, prov) in &cadj.provenance {
        let (bt, plus) = &sheets[&prov.triangle];
        let key = (bt.clone(), prov.from_slot, prov.to_slot, *plus);
        let img = g_index.get(&key).ok_or_else(|| fail(format!("cover arrow {name} has no partner")))?;
        m.arrow_map.insert(name.clone(), (Q::one(), img.clone()));
    }
    if !m.is_isomorphism(&cadj.qp.quiver, &ctx.quiver_g) {
        let why = m.validate(&cadj.qp.quiver, &ctx.quiver_g).err().map(|e| e.to_string()).unwrap_or_else(|| "not bijective".into());
        return Err(fail(why));
    }
    let target = ctx.potential_g.clone().expect("skew potential");
    let image = Potential::new(&ctx.quiver_g, &apply_quiver_morphism(&m, cadj.qp.potential.expr())?)?;
    let support_a: BTreeSet<&Path> = image.expr().terms().keys().collect();
    let support_b: BTreeSet<&Path> = target.expr().terms().keys().collect();
    if support_a != support_b {
        return Err(fail(format!("potentials have different cycles: {image} vs {target}")));
    }
    // rescale one arrow per cycle
    let inverse: BTreeMap<String, String> = m.arrow_map.iter().map(|(k, (_, v))| (v.clone(), k.clone())).collect();
    let mut used = BTreeSet::new();
    for (cycle, c) in target.expr().terms() {
        let ratio = c / image.expr().coeff(cycle);
        if ratio.is_one() {
            continue;
        }
        let pick = cycle.arrows.iter().find(|a| !used.contains(*a)).ok_or_else(|| fail(format!("cannot rescale {cycle}")))?;
        used.extend(cycle.arrows.iter().cloned());
        m.arrow_map.get_mut(&inverse[pick]).expect("arrow").0 = ratio;
    }
    let rescaled = Potential::new(&ctx.quiver_g, &apply_quiver_morphism(&m, cadj.qp.potential.expr())?)?;
    if rescaled != target {
        return Err(fail(format!("rescaled potential {rescaled} differs from {target}")));
    }
    Ok((m, cadj))
}

impl DoubleCover {
    /// Checks the involution: it is one, it commutes with the projection, and
    /// it fixes exactly the new arcs.
    pub fn check_involution(&self) -> bool {
        let fixed: BTreeSet<&String> = self.sigma.iter().filter(|(k, v)| k == v).map(|(k, _)| k).collect();
        let new: BTreeSet<&String> = self.new_arcs.values().collect();
        self.sigma.iter().all(|(k, v)| self.sigma[v] == *k && self.projection[k] == self.projection[v]) && fixed == new
    }

    /// Arrow scalars different from 1 in the rescaling witness.
    pub fn rescaling(&self) -> Vec<(String, Q)> {
        self.witness.arrow_map.iter().filter(|(_, (c, _))| !c.is_one()).map(|(k, (c, _))| (k.clone(), c.clone())).collect()
    }
}

impl fmt::Display for DoubleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.sigma {
            if k <= v {
                writeln!(f, "sigma {k} {v}")?;
            }
        }
        for (a, c) in self.rescaling() {
            if !c.is_zero() {
                writeln!(f, "rescale {a} {}", fmt_q(&c))?;
            }
        }
        Ok(())
    }
}

/// `(genus, boundary components, marked points per boundary, punctures)`.
pub fn surface_invariants(t: &Triangulation) -> Result<(usize, usize, Vec<usize>, usize), SurfaceError> {
    let i = t.validate()?;
    Ok((i.genus, i.boundary_components, i.marked_per_boundary, i.punctures))
}
