//! Arena-backed combinatorial maps for directed trivalent webs with
//! crossings.
//!
//! A diagram is a set of darts (half-edges) carrying a pairing involution
//! (the edges), a counterclockwise rotation at every vertex (the `cycle`
//! lists), and a flow direction per dart. Faces are the orbits of
//! "cross the edge, then rotate", so bigon and square detection needs no
//! geometric data. Fragment boundary slots are one-valent `Port` vertices;
//! gluing two ports splices their strands, or closes a free loop when the
//! strand has no other attachment. Free loops carry no darts and are only
//! counted.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::qexact::QError;

pub type DartId = u32;
pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Trivalent vertex with all strands outgoing.
    Source,
    /// Trivalent vertex with all strands incoming.
    Sink,
    /// Crossing whose over strand runs lower-left to upper-right.
    OverNe,
    /// Crossing whose over strand runs lower-right to upper-left.
    OverNw,
    /// One-valent boundary slot of an open fragment.
    Port,
}

impl VertexKind {
    pub fn is_crossing(self) -> bool {
        matches!(self, VertexKind::OverNe | VertexKind::OverNw)
    }

    pub fn is_trivalent(self) -> bool {
        matches!(self, VertexKind::Source | VertexKind::Sink)
    }

    fn label(self) -> &'static str {
        match self {
            VertexKind::Source => "source",
            VertexKind::Sink => "sink",
            VertexKind::OverNe => "over-ne",
            VertexKind::OverNw => "over-nw",
            VertexKind::Port => "port",
        }
    }
}

#[derive(Error, Debug)]
pub enum SkeinError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("no reducible face in a nonempty crossingless diagram (non-planar or malformed input)\n{dump}")]
    Stuck { dump: String },
    #[error("clasp color {n} exceeds the configured oracle limit {limit}")]
    ColorLimit { n: i64, limit: i64 },
    #[error("operation requires a closed diagram (no ports, no dangling darts)")]
    NotClosed,
    #[error("operation requires a crossingless diagram")]
    HasCrossings,
    #[error(transparent)]
    Algebra(#[from] QError),
}

#[derive(Clone, Debug)]
struct Dart {
    vertex: VertexId,
    partner: Option<DartId>,
    /// true when the strand flows away from `vertex` along this dart.
    out: bool,
}

#[derive(Clone, Debug)]
struct Vertex {
    kind: VertexKind,
    /// Incident darts in counterclockwise order.
    cycle: Vec<DartId>,
}

/// A web diagram, possibly open (with ports) and possibly still containing
/// crossings. Removed darts and vertices leave tombstones so identifiers
/// stay stable across surgery.
#[derive(Clone, Debug, Default)]
pub struct WebDiagram {
    darts: Vec<Option<Dart>>,
    vertices: Vec<Option<Vertex>>,
    free_loops: usize,
    /// Ports forming the lower boundary, left to right.
    pub bottom_ports: Vec<VertexId>,
    /// Ports forming the upper boundary, left to right.
    pub top_ports: Vec<VertexId>,
}

impl WebDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_free_loop(&mut self) {
        self.free_loops += 1;
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Transfer all free loops into a bare count, leaving zero behind.
    pub fn take_free_loops(&mut self) -> usize {
        std::mem::take(&mut self.free_loops)
    }

    /// Create a vertex with fresh darts in counterclockwise order;
    /// `dirs[i]` is true when dart `i` is outgoing.
    pub fn add_vertex(&mut self, kind: VertexKind, dirs: &[bool]) -> (VertexId, Vec<DartId>) {
        let v = self.vertices.len() as VertexId;
        let mut cycle = Vec::with_capacity(dirs.len());
        for &out in dirs {
            let d = self.darts.len() as DartId;
            self.darts.push(Some(Dart { vertex: v, partner: None, out }));
            cycle.push(d);
        }
        self.vertices.push(Some(Vertex { kind, cycle: cycle.clone() }));
        (v, cycle)
    }

    /// Create a one-valent port; `strand_out` is the direction of its dart
    /// (true when the strand leaves the port into the diagram).
    pub fn add_port(&mut self, strand_out: bool) -> (VertexId, DartId) {
        let (v, darts) = self.add_vertex(VertexKind::Port, &[strand_out]);
        (v, darts[0])
    }

    fn dart(&self, d: DartId) -> &Dart {
        self.darts[d as usize].as_ref().expect("live dart")
    }

    fn dart_mut(&mut self, d: DartId) -> &mut Dart {
        self.darts[d as usize].as_mut().expect("live dart")
    }

    fn vertex(&self, v: VertexId) -> &Vertex {
        self.vertices[v as usize].as_ref().expect("live vertex")
    }

    pub fn partner(&self, d: DartId) -> Option<DartId> {
        self.dart(d).partner
    }

    pub fn dart_out(&self, d: DartId) -> bool {
        self.dart(d).out
    }

    pub fn dart_vertex(&self, d: DartId) -> VertexId {
        self.dart(d).vertex
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.vertex(v).kind
    }

    pub fn cycle(&self, v: VertexId) -> &[DartId] {
        &self.vertex(v).cycle
    }

    pub fn is_live_vertex(&self, v: VertexId) -> bool {
        self.vertices.get(v as usize).is_some_and(|s| s.is_some())
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        (0..self.vertices.len() as VertexId).filter(|&v| self.is_live_vertex(v)).collect()
    }

    pub fn dart_ids(&self) -> Vec<DartId> {
        (0..self.darts.len() as DartId)
            .filter(|&d| self.darts[d as usize].is_some())
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.vertex_ids().into_iter().filter(|&v| self.kind(v).is_crossing()).count()
    }

    pub fn trivalent_count(&self) -> usize {
        self.vertex_ids().into_iter().filter(|&v| self.kind(v).is_trivalent()).count()
    }

    /// Smallest live crossing vertex, if any.
    pub fn first_crossing(&self) -> Option<VertexId> {
        self.vertex_ids().into_iter().find(|&v| self.kind(v).is_crossing())
    }

    /// True when the diagram has no ports and no dangling darts.
    pub fn is_closed(&self) -> bool {
        self.bottom_ports.is_empty()
            && self.top_ports.is_empty()
            && self.vertex_ids().iter().all(|&v| self.kind(v) != VertexKind::Port)
            && self.dart_ids().iter().all(|&d| self.partner(d).is_some())
    }

    /// Pair two unpaired darts of opposite direction into an edge.
    pub fn pair(&mut self, a: DartId, b: DartId) {
        assert_ne!(a, b, "cannot pair a dart with itself");
        assert!(self.dart(a).partner.is_none(), "dart {a} already paired");
        assert!(self.dart(b).partner.is_none(), "dart {b} already paired");
        assert_ne!(self.dart(a).out, self.dart(b).out, "paired darts must have opposite directions");
        self.dart_mut(a).partner = Some(b);
        self.dart_mut(b).partner = Some(a);
    }

    /// Dissolve the edge through `d`, leaving both ends dangling.
    pub fn unpair(&mut self, d: DartId) {
        let p = self.dart(d).partner.expect("unpair of a dangling dart");
        self.dart_mut(d).partner = None;
        self.dart_mut(p).partner = None;
    }

    fn remove_vertex_and_darts(&mut self, v: VertexId) {
        let cycle = self.vertex(v).cycle.clone();
        for d in cycle {
            self.darts[d as usize] = None;
        }
        self.vertices[v as usize] = None;
    }

    /// Append another diagram's arena (and free loops) to this one.
    /// Returns the (dart, vertex) identifier offsets for the copy.
    pub fn merge_arenas(&mut self, other: &WebDiagram) -> (DartId, VertexId) {
        let doff = self.darts.len() as DartId;
        let voff = self.vertices.len() as VertexId;
        for slot in &other.darts {
            self.darts.push(slot.as_ref().map(|d| Dart {
                vertex: d.vertex + voff,
                partner: d.partner.map(|p| p + doff),
                out: d.out,
            }));
        }
        for slot in &other.vertices {
            self.vertices.push(slot.as_ref().map(|v| Vertex {
                kind: v.kind,
                cycle: v.cycle.iter().map(|&d| d + doff).collect(),
            }));
        }
        self.free_loops += other.free_loops;
        (doff, voff)
    }

    /// Remove two ports and splice their strands together. If the two ports
    /// bound the same bare strand, it closes into a free loop.
    pub fn glue_ports(&mut self, a: VertexId, b: VertexId) {
        assert_ne!(a, b, "cannot glue a port to itself");
        assert_eq!(self.kind(a), VertexKind::Port, "glue target {a} is not a port");
        assert_eq!(self.kind(b), VertexKind::Port, "glue target {b} is not a port");
        let pa = self.vertex(a).cycle[0];
        let pb = self.vertex(b).cycle[0];
        let ta = self.partner(pa).expect("glued port must be attached");
        let tb = self.partner(pb).expect("glued port must be attached");
        if ta == pb {
            // The two ports are the ends of one bare strand.
            self.free_loops += 1;
        } else {
            self.dart_mut(ta).partner = Some(tb);
            self.dart_mut(tb).partner = Some(ta);
            assert_ne!(self.dart(ta).out, self.dart(tb).out, "glued strand directions disagree");
        }
        self.remove_vertex_and_darts(a);
        self.remove_vertex_and_darts(b);
        self.bottom_ports.retain(|&p| p != a && p != b);
        self.top_ports.retain(|&p| p != a && p != b);
    }

    /// Remove a set of vertices, reconnecting the severed strands according
    /// to `joins`: each pair names two removed darts whose outside ends are
    /// to be spliced. Chains of joins are followed; a chain that closes on
    /// itself becomes a free loop.
    pub fn excise_with_joins(
        &mut self,
        region: &[VertexId],
        joins: &[(DartId, DartId)],
    ) -> Result<(), SkeinError> {
        let mut removed: HashSet<DartId> = HashSet::new();
        for &v in region {
            for &d in self.cycle(v) {
                removed.insert(d);
            }
        }
        let mut join_of: HashMap<DartId, DartId> = HashMap::new();
        for &(a, b) in joins {
            for &d in &[a, b] {
                if !removed.contains(&d) {
                    return Err(SkeinError::Malformed(format!(
                        "join endpoint {d} is not inside the excised region"
                    )));
                }
            }
            join_of.insert(a, b);
            join_of.insert(b, a);
        }

        let mut consumed: HashSet<DartId> = HashSet::new();
        let mut new_pairs: Vec<(DartId, DartId)> = Vec::new();
        for &(a, b) in joins {
            if consumed.contains(&a) {
                continue;
            }
            consumed.insert(a);
            consumed.insert(b);
            match self.walk_join(a, b, &join_of, &removed, &mut consumed)? {
                None => self.free_loops += 1,
                Some(end_a) => {
                    let end_b = self
                        .walk_join(b, a, &join_of, &removed, &mut consumed)?
                        .ok_or_else(|| {
                            SkeinError::Malformed("join chain closed on one side only".into())
                        })?;
                    new_pairs.push((end_a, end_b));
                }
            }
        }

        for &v in region {
            self.remove_vertex_and_darts(v);
        }
        for (x, y) in new_pairs {
            if self.dart(x).out == self.dart(y).out {
                return Err(SkeinError::Malformed(format!(
                    "surgery would pair equal-direction darts {x} and {y}"
                )));
            }
            self.dart_mut(x).partner = Some(y);
            self.dart_mut(y).partner = Some(x);
        }
        Ok(())
    }

    /// Walk outward from removed dart `from` (whose join partner is `stop`),
    /// hopping across join pairs, until a surviving dart is reached.
    /// Returns None when the chain comes back to `stop`, i.e. closes.
    fn walk_join(
        &self,
        from: DartId,
        stop: DartId,
        join_of: &HashMap<DartId, DartId>,
        removed: &HashSet<DartId>,
        consumed: &mut HashSet<DartId>,
    ) -> Result<Option<DartId>, SkeinError> {
        let mut x = from;
        loop {
            let p = self
                .partner(x)
                .ok_or_else(|| SkeinError::Malformed(format!("dangling dart {x} in surgery")))?;
            if p == stop {
                return Ok(None);
            }
            match join_of.get(&p) {
                None => {
                    if removed.contains(&p) {
                        return Err(SkeinError::Malformed(format!(
                            "severed dart {p} has no join assignment"
                        )));
                    }
                    return Ok(Some(p));
                }
                Some(&q) => {
                    consumed.insert(p);
                    consumed.insert(q);
                    x = q;
                }
            }
        }
    }

    /// Replace a crossing by its double-vertex resolution: the two incoming
    /// strands feed a new sink, the two outgoing ones leave a new source,
    /// and a single central edge runs source to sink. The four strand darts
    /// survive unchanged; only their vertex assignment moves.
    pub fn split_crossing_to_double(&mut self, v: VertexId) -> Result<(), SkeinError> {
        let [c0, c1, c2, c3] = normalized_crossing_cycle(self, v)?;
        self.vertices[v as usize] = None;
        let s = self.vertices.len() as VertexId;
        let zs = self.darts.len() as DartId;
        self.darts.push(Some(Dart { vertex: s, partner: None, out: false }));
        // Counterclockwise at the sink: central (up), lower-left, lower-right.
        self.vertices.push(Some(Vertex { kind: VertexKind::Sink, cycle: vec![zs, c0, c1] }));
        let r = self.vertices.len() as VertexId;
        let zr = self.darts.len() as DartId;
        self.darts.push(Some(Dart { vertex: r, partner: None, out: true }));
        // Counterclockwise at the source: upper-right, upper-left, central.
        self.vertices.push(Some(Vertex { kind: VertexKind::Source, cycle: vec![c2, c3, zr] }));
        for &d in &[c0, c1] {
            self.dart_mut(d).vertex = s;
        }
        for &d in &[c2, c3] {
            self.dart_mut(d).vertex = r;
        }
        self.dart_mut(zs).partner = Some(zr);
        self.dart_mut(zr).partner = Some(zs);
        Ok(())
    }

    /// Rotation successor: next dart counterclockwise around `d`'s vertex.
    pub fn sigma_next(&self, d: DartId) -> DartId {
        let v = self.vertex(self.dart(d).vertex);
        let i = v
            .cycle
            .iter()
            .position(|&x| x == d)
            .expect("dart listed in its vertex cycle");
        v.cycle[(i + 1) % v.cycle.len()]
    }

    /// Face orbits of "cross the edge, then rotate". Requires every dart to
    /// be paired. Each orbit is listed starting from its smallest dart, and
    /// orbits appear in increasing order of that smallest dart.
    pub fn faces(&self) -> Result<Vec<Vec<DartId>>, SkeinError> {
        let mut seen: HashSet<DartId> = HashSet::new();
        let mut out = Vec::new();
        for d in self.dart_ids() {
            if seen.contains(&d) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = d;
            loop {
                orbit.push(x);
                seen.insert(x);
                let p = self.partner(x).ok_or_else(|| {
                    SkeinError::Malformed(format!("dangling dart {x} during face enumeration"))
                })?;
                x = self.sigma_next(p);
                if x == d {
                    break;
                }
                if orbit.len() > self.darts.len() {
                    return Err(SkeinError::Malformed("face walk does not close".into()));
                }
            }
            out.push(orbit);
        }
        Ok(out)
    }

    /// Structural checks: involution and direction consistency, cycle/vertex
    /// agreement, valences per kind, and sphericity (V - E + F = 2) of every
    /// connected component that has vertices.
    pub fn validate(&self) -> Result<(), SkeinError> {
        let malformed = |msg: String| Err(SkeinError::Malformed(msg));
        for d in self.dart_ids() {
            let dart = self.dart(d);
            if !self.is_live_vertex(dart.vertex) {
                return malformed(format!("dart {d} points at a dead vertex"));
            }
            if !self.vertex(dart.vertex).cycle.contains(&d) {
                return malformed(format!("dart {d} missing from its vertex cycle"));
            }
            match dart.partner {
                None => return malformed(format!("dart {d} is dangling")),
                Some(p) => {
                    if p == d || self.darts[p as usize].is_none() {
                        return malformed(format!("dart {d} has an invalid partner"));
                    }
                    if self.partner(p) != Some(d) {
                        return malformed(format!("pairing not involutive at dart {d}"));
                    }
                    if self.dart_out(p) == dart.out {
                        return malformed(format!("edge {d}<->{p} has equal directions"));
                    }
                }
            }
        }
        for v in self.vertex_ids() {
            let vx = self.vertex(v);
            for &d in &vx.cycle {
                if self.darts[d as usize].is_none() || self.dart_vertex(d) != v {
                    return malformed(format!("vertex {v} cycle lists foreign dart {d}"));
                }
            }
            let outs = vx.cycle.iter().filter(|&&d| self.dart_out(d)).count();
            match vx.kind {
                VertexKind::Source => {
                    if vx.cycle.len() != 3 || outs != 3 {
                        return malformed(format!("source {v} is not all-outgoing trivalent"));
                    }
                }
                VertexKind::Sink => {
                    if vx.cycle.len() != 3 || outs != 0 {
                        return malformed(format!("sink {v} is not all-incoming trivalent"));
                    }
                }
                VertexKind::OverNe | VertexKind::OverNw => {
                    if vx.cycle.len() != 4 || outs != 2 {
                        return malformed(format!("crossing {v} must have two ins and two outs"));
                    }
                    normalized_crossing_cycle(self, v)?;
                }
                VertexKind::Port => {
                    if vx.cycle.len() != 1 {
                        return malformed(format!("port {v} must be one-valent"));
                    }
                }
            }
        }
        for &p in self.bottom_ports.iter().chain(&self.top_ports) {
            if !self.is_live_vertex(p) || self.kind(p) != VertexKind::Port {
                return malformed(format!("boundary list names non-port vertex {p}"));
            }
        }
        self.check_spherical()
    }

    /// Euler characteristic 2 for every component with vertices, computed
    /// from the face orbits; catches gluings that are planar nowhere.
    fn check_spherical(&self) -> Result<(), SkeinError> {
        let darts = self.dart_ids();
        if darts.is_empty() {
            return Ok(());
        }
        let index: HashMap<DartId, usize> =
            darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let mut uf: Vec<usize> = (0..darts.len()).collect();
        fn find(uf: &mut Vec<usize>, mut i: usize) -> usize {
            while uf[i] != i {
                uf[i] = uf[uf[i]];
                i = uf[i];
            }
            i
        }
        let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                uf[ra] = rb;
            }
        };
        for &d in &darts {
            if let Some(p) = self.partner(d) {
                union(&mut uf, index[&d], index[&p]);
            }
            let n = self.sigma_next(d);
            union(&mut uf, index[&d], index[&n]);
        }
        let mut verts: HashMap<usize, i64> = HashMap::new();
        let mut edges: HashMap<usize, i64> = HashMap::new();
        let mut faces: HashMap<usize, i64> = HashMap::new();
        for v in self.vertex_ids() {
            let d0 = self.vertex(v).cycle[0];
            *verts.entry(find(&mut uf, index[&d0])).or_default() += 1;
        }
        for &d in &darts {
            if self.partner(d).map_or(false, |p| p > d) {
                *edges.entry(find(&mut uf, index[&d])).or_default() += 1;
            }
        }
        for orbit in self.faces()? {
            *faces.entry(find(&mut uf, index[&orbit[0]])).or_default() += 1;
        }
        for (comp, &v) in &verts {
            let e = edges.get(comp).copied().unwrap_or(0);
            let f = faces.get(comp).copied().unwrap_or(0);
            if v - e + f != 2 {
                return Err(SkeinError::Malformed(format!(
                    "component fails sphericity: V={v} E={e} F={f}\n{}",
                    self.dump()
                )));
            }
        }
        Ok(())
    }

    /// Text form for failure reproduction: one line per vertex
    /// `v<id> <kind> cycle=[..]`, one line per edge `e a<->b dir=x->y`,
    /// then free-loop and boundary summaries when present.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in self.vertex_ids() {
            let cyc: Vec<String> = self.cycle(v).iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "v{} {} cycle=[{}]", v, self.kind(v).label(), cyc.join(","));
        }
        for d in self.dart_ids() {
            if let Some(p) = self.partner(d) {
                if p > d {
                    let (from, to) = if self.dart_out(d) { (d, p) } else { (p, d) };
                    let _ = writeln!(s, "e {d}<->{p} dir={from}->{to}");
                }
            }
        }
        if self.free_loops > 0 {
            let _ = writeln!(s, "loops {}", self.free_loops);
        }
        if !self.bottom_ports.is_empty() || !self.top_ports.is_empty() {
            let b: Vec<String> = self.bottom_ports.iter().map(|v| v.to_string()).collect();
            let t: Vec<String> = self.top_ports.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "ports bottom=[{}] top=[{}]", b.join(","), t.join(","));
        }
        s
    }
}

/// Rotate a crossing's cycle so it reads `[in, in, out, out]`:
/// lower-left, lower-right, upper-right, upper-left.
pub fn normalized_crossing_cycle(
    d: &WebDiagram,
    v: VertexId,
) -> Result<[DartId; 4], SkeinError> {
    let cyc = d.cycle(v);
    if cyc.len() != 4 {
        return Err(SkeinError::Malformed(format!("crossing {v} is not 4-valent")));
    }
    for r in 0..4 {
        let rot = [cyc[r], cyc[(r + 1) % 4], cyc[(r + 2) % 4], cyc[(r + 3) % 4]];
        let dirs = [
            d.dart_out(rot[0]),
            d.dart_out(rot[1]),
            d.dart_out(rot[2]),
            d.dart_out(rot[3]),
        ];
        if dirs == [false, false, true, true] {
            return Ok(rot);
        }
    }
    Err(SkeinError::Malformed(format!(
        "crossing {v} directions do not alternate in-in-out-out"
    )))
}
