//! Open fragments, magnitude-n clasps, braid construction and the clasped
//! torus-link diagrams.
//!
//! Fragments are web diagrams with ordered port rows; `compose` stacks two
//! fragments strand-for-strand, `tensor` lays them side by side. The clasp
//! on n strands is expanded recursively into a sum of crossingless,
//! clasp-free fragments: each recursion step is
//! `(c_{n-1} ox id) - ([n-1]/[n]) (c_{n-1} ox id)(id ox W)(c_{n-1} ox id)`
//! where W is the cup-cap pair on the last two strands, and every product is
//! flattened (faces reduced, isomorphic summands merged) before the next
//! step. This keeps the term count at the dimension of the relevant
//! intertwiner space instead of growing exponentially.

use std::collections::HashMap;

use crate::qexact::{quantum_int, RationalQ, SixthPowerLaurent};

use super::diagram::{DartId, SkeinError, VertexId, VertexKind, WebDiagram};
use super::reduce::{evaluate_closed, flatten_fragment};
use super::{ClaspSpec, ClaspedDiagram, WebSum};

/// Largest clasp color the oracle expands by default. Expansion cost grows
/// with both the term count and the crossing count of the host diagram, so
/// callers must raise this knowingly.
pub const DEFAULT_COLOR_LIMIT: i64 = 3;

/// `width` parallel strands, each a bare port-to-port edge.
pub fn identity_fragment(width: usize) -> WebDiagram {
    let mut d = WebDiagram::new();
    for _ in 0..width {
        let (b, bd) = d.add_port(true);
        let (t, td) = d.add_port(false);
        d.pair(bd, td);
        d.bottom_ports.push(b);
        d.top_ports.push(t);
    }
    d
}

/// The cup-cap pair on two strands: a sink absorbing both lower strands and
/// a source emitting both upper ones, joined by a single central edge.
pub fn w_fragment() -> WebDiagram {
    let mut d = WebDiagram::new();
    // Counterclockwise at the sink: central edge (up), lower-left, lower-right.
    let (s, sd) = d.add_vertex(VertexKind::Sink, &[false, false, false]);
    // Counterclockwise at the source: upper-right, upper-left, central (down).
    let (r, rd) = d.add_vertex(VertexKind::Source, &[true, true, true]);
    let _ = (s, r);
    d.pair(rd[2], sd[0]);
    let (b1, b1d) = d.add_port(true);
    d.pair(b1d, sd[1]);
    let (b2, b2d) = d.add_port(true);
    d.pair(b2d, sd[2]);
    let (t1, t1d) = d.add_port(false);
    d.pair(rd[1], t1d);
    let (t2, t2d) = d.add_port(false);
    d.pair(rd[0], t2d);
    d.bottom_ports = vec![b1, b2];
    d.top_ports = vec![t1, t2];
    d
}

/// Side-by-side juxtaposition; `a`'s strands come first.
pub fn tensor(a: &WebDiagram, b: &WebDiagram) -> WebDiagram {
    let mut d = a.clone();
    let (_doff, voff) = d.merge_arenas(b);
    d.bottom_ports.extend(b.bottom_ports.iter().map(|&v| v + voff));
    d.top_ports.extend(b.top_ports.iter().map(|&v| v + voff));
    d
}

/// Stack `upper` on top of `lower`, gluing strand i to strand i.
pub fn compose(lower: &WebDiagram, upper: &WebDiagram) -> WebDiagram {
    assert_eq!(
        lower.top_ports.len(),
        upper.bottom_ports.len(),
        "composed fragments must have matching widths"
    );
    let mut d = lower.clone();
    let (_doff, voff) = d.merge_arenas(upper);
    let lower_top: Vec<VertexId> = d.top_ports.clone();
    let upper_bottom: Vec<VertexId> =
        upper.bottom_ports.iter().map(|&v| v + voff).collect();
    let upper_top: Vec<VertexId> = upper.top_ports.iter().map(|&v| v + voff).collect();
    d.top_ports = upper_top;
    for (t, b) in lower_top.into_iter().zip(upper_bottom) {
        d.glue_ports(t, b);
    }
    d
}

/// Canonical token stream of a fragment, anchored at its port rows. Two
/// fragments are isomorphic respecting boundary order iff their signatures
/// match; used to merge summands after flattening.
pub fn canonical_signature(d: &WebDiagram) -> Vec<i64> {
    let mut canon: HashMap<DartId, i64> = HashMap::new();
    let mut next = 0i64;
    let mut tokens: Vec<i64> = vec![
        d.bottom_ports.len() as i64,
        d.top_ports.len() as i64,
        d.free_loops() as i64,
    ];
    let mut queue: std::collections::VecDeque<DartId> = std::collections::VecDeque::new();
    let mut seen_vertex: std::collections::HashSet<VertexId> = std::collections::HashSet::new();
    for &p in d.bottom_ports.iter().chain(&d.top_ports) {
        let pd = d.cycle(p)[0];
        canon.entry(pd).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
        seen_vertex.insert(p);
        queue.push_back(pd);
    }
    while let Some(x) = queue.pop_front() {
        let p = d.partner(x).expect("signature of a fully paired fragment");
        for &dd in &[x, p] {
            if !canon.contains_key(&dd) {
                canon.insert(dd, next);
                next += 1;
            }
        }
        tokens.push(canon[&x]);
        tokens.push(canon[&p]);
        tokens.push(d.dart_out(x) as i64);
        let v = d.dart_vertex(p);
        if !seen_vertex.insert(v) {
            continue;
        }
        let kind_code = match d.kind(v) {
            VertexKind::Source => 1,
            VertexKind::Sink => 2,
            VertexKind::OverNe => 3,
            VertexKind::OverNw => 4,
            VertexKind::Port => 5,
        };
        tokens.push(kind_code);
        // Walk the cycle starting at the entering dart; enqueue the others.
        let cyc = d.cycle(v).to_vec();
        let start = cyc.iter().position(|&c| c == p).expect("dart in cycle");
        for i in 1..cyc.len() {
            let c = cyc[(start + i) % cyc.len()];
            if !canon.contains_key(&c) {
                canon.insert(c, next);
                next += 1;
            }
            tokens.push(canon[&c]);
            queue.push_back(c);
        }
    }
    tokens
}

/// Flatten each summand and merge isomorphic fragments, dropping zero
/// coefficients. The output is sorted by signature, hence deterministic.
pub fn flatten_and_merge(
    terms: Vec<(RationalQ, WebDiagram)>,
) -> Result<Vec<(RationalQ, WebDiagram)>, SkeinError> {
    let mut merged: HashMap<Vec<i64>, (RationalQ, WebDiagram)> = HashMap::new();
    for (coeff, frag) in terms {
        for (mult, reduced) in flatten_fragment(&frag)? {
            let key = canonical_signature(&reduced);
            let contribution = coeff.scaled_laurent(&mult);
            match merged.get_mut(&key) {
                Some((acc, _)) => *acc = &*acc + &contribution,
                None => {
                    merged.insert(key, (contribution, reduced));
                }
            }
        }
    }
    let mut out: Vec<(Vec<i64>, (RationalQ, WebDiagram))> = merged.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out
        .into_iter()
        .map(|(_, t)| t)
        .filter(|(c, _)| !c.is_zero())
        .collect())
}

/// The clasp on `n` strands as a merged sum of clasp-free fragments.
pub fn clasp_fragments(
    n: i64,
    limit: i64,
) -> Result<Vec<(RationalQ, WebDiagram)>, SkeinError> {
    if n < 0 {
        return Err(SkeinError::Malformed(format!("clasp color {n} is negative")));
    }
    if n > limit {
        return Err(SkeinError::ColorLimit { n, limit });
    }
    let width = n as usize;
    if n <= 1 {
        return Ok(vec![(RationalQ::one(), identity_fragment(width))]);
    }
    let prev = clasp_fragments(n - 1, limit)?;
    let id1 = identity_fragment(1);
    let side: Vec<(RationalQ, WebDiagram)> = prev
        .iter()
        .map(|(c, f)| (c.clone(), tensor(f, &id1)))
        .collect();
    let mid = tensor(&identity_fragment(width - 2), &w_fragment());
    let ratio = RationalQ::new(quantum_int(n - 1), quantum_int(n))?;
    let mut terms: Vec<(RationalQ, WebDiagram)> = side.clone();
    for (ca, fa) in &side {
        let lower_mid = compose(fa, &mid);
        for (cb, fb) in &side {
            let whole = compose(&lower_mid, fb);
            let coeff = -&(&(ca * cb) * &ratio);
            terms.push((coeff, whole));
        }
    }
    flatten_and_merge(terms)
}

/// Insert the expanded clasp into `host` at the slots of `spec`: the first
/// n slots receive the clasp's bottom ports, the last n its top ports.
pub fn clasp_insert(
    host: &WebDiagram,
    spec: &ClaspSpec,
    limit: i64,
) -> Result<WebSum, SkeinError> {
    let n = spec.n;
    if spec.slots.len() != 2 * n.max(0) as usize {
        return Err(SkeinError::Malformed(format!(
            "clasp spec for color {n} must list {} slots, found {}",
            2 * n.max(0),
            spec.slots.len()
        )));
    }
    let expansion = clasp_fragments(n, limit)?;
    let mut terms = Vec::with_capacity(expansion.len());
    for (coeff, frag) in expansion {
        let mut d = host.clone();
        let (_doff, voff) = d.merge_arenas(&frag);
        for k in 0..n as usize {
            d.glue_ports(spec.slots[k], frag.bottom_ports[k] + voff);
            d.glue_ports(spec.slots[n as usize + k], frag.top_ports[k] + voff);
        }
        terms.push((coeff, d));
    }
    Ok(WebSum { terms })
}

/// Append one crossing between strands `i` and `i+1` at the growing top of
/// an open fragment.
pub fn insert_crossing(d: &mut WebDiagram, i: usize, kind: VertexKind) {
    assert!(kind.is_crossing(), "insert_crossing needs a crossing kind");
    assert!(i + 1 < d.top_ports.len(), "crossing position out of range");
    let pi = d.cycle(d.top_ports[i])[0];
    let pj = d.cycle(d.top_ports[i + 1])[0];
    let ti = d.partner(pi).expect("attached port");
    let tj = d.partner(pj).expect("attached port");
    d.unpair(pi);
    d.unpair(pj);
    // Counterclockwise from the lower-left: in, in, out, out.
    let (_v, c) = d.add_vertex(kind, &[false, false, true, true]);
    d.pair(ti, c[0]);
    d.pair(tj, c[1]);
    d.pair(c[3], pi);
    d.pair(c[2], pj);
}

/// Open braid diagram: `width` upward strands with the listed crossings
/// applied bottom to top. `word` entries are (left strand index, kind).
pub fn braid_diagram(width: usize, word: &[(usize, VertexKind)]) -> WebDiagram {
    let mut d = identity_fragment(width);
    for &(i, kind) in word {
        insert_crossing(&mut d, i, kind);
    }
    d
}

/// Trace closure: glue top port i to bottom port i for every strand.
pub fn close_trace(d: &mut WebDiagram) {
    assert_eq!(d.top_ports.len(), d.bottom_ports.len());
    let tops = d.top_ports.clone();
    let bottoms = d.bottom_ports.clone();
    for (t, b) in tops.into_iter().zip(bottoms) {
        d.glue_ports(t, b);
    }
}

/// Crossing order for one half-twist of two n-strand cables: the lanes of
/// one cable are carried across the other one at a time, n^2 crossings.
fn cable_half_twist_positions(n: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(n * n);
    for k in 1..=n {
        for l in 0..n {
            word.push(n - k + l);
        }
    }
    word
}

/// Append one crossing between lanes `i` and `i+1` of a growing twist
/// region whose lanes carry strands in mixed directions. `front` holds the
/// dangling dart of each lane and whether its strand flows upward; the two
/// lanes must run in opposite directions, and they swap directions.
fn insert_antiparallel_crossing(
    d: &mut WebDiagram,
    front: &mut [(DartId, bool)],
    i: usize,
    kind: VertexKind,
) {
    assert!(kind.is_crossing(), "needs a crossing kind");
    let (li, up_i) = front[i];
    let (lj, up_j) = front[i + 1];
    assert!(up_i != up_j, "lanes {i},{} must run in opposite directions", i + 1);
    // Counterclockwise from the lower-left: lower-left, lower-right,
    // upper-right, upper-left. The upward strand enters at the bottom and
    // leaves diagonally at the top; the downward strand does the reverse.
    let dirs = if up_i {
        [false, true, true, false]
    } else {
        [true, false, false, true]
    };
    let (_v, c) = d.add_vertex(kind, &dirs);
    d.pair(li, c[0]);
    d.pair(lj, c[1]);
    front[i] = (c[3], up_j);
    front[i + 1] = (c[2], up_i);
}

/// The (2,2m) torus link with both components cabled by n strands and a
/// clasp on each cable, oriented so the two components run antiparallel:
/// cable one flows up through the twist region in lanes 0..n, cable two
/// flows down in lanes n..2n. All 2m n^2 crossings share one unoriented
/// handedness. The clasps are recorded as insertion specs sitting on each
/// cable's return arc; cable one returns on the left (top row then bottom
/// row), cable two on the right (bottom row then top row, outermost lane
/// first so the return stays planar).
pub fn torus_link_diagram(m: i64, n: i64, limit: i64) -> Result<ClaspedDiagram, SkeinError> {
    if m < 1 {
        return Err(SkeinError::Malformed(format!("torus parameter m={m} must be >= 1")));
    }
    if n < 0 {
        return Err(SkeinError::Malformed(format!("cable width n={n} must be >= 0")));
    }
    if n > limit {
        return Err(SkeinError::ColorLimit { n, limit });
    }
    let width = n as usize;
    let mut diagram = WebDiagram::new();
    let mut front: Vec<(DartId, bool)> = Vec::with_capacity(2 * width);
    for lane in 0..2 * width {
        let up = lane < width;
        let (p, pd) = diagram.add_port(up);
        diagram.bottom_ports.push(p);
        front.push((pd, up));
    }
    let half = cable_half_twist_positions(width);
    for _ in 0..2 * m {
        for &i in &half {
            insert_antiparallel_crossing(&mut diagram, &mut front, i, VertexKind::OverNw);
        }
    }
    // 2m half-twists restore the original direction pattern lane by lane.
    for lane in 0..2 * width {
        let (fd, up) = front[lane];
        let (p, pd) = diagram.add_port(!up);
        diagram.pair(fd, pd);
        diagram.top_ports.push(p);
    }
    let mut clasps = Vec::new();
    if n > 0 {
        let mut slots: Vec<VertexId> = diagram.top_ports[..width].to_vec();
        slots.extend_from_slice(&diagram.bottom_ports[..width]);
        clasps.push(ClaspSpec { n, slots });
        let mut slots: Vec<VertexId> =
            diagram.bottom_ports[width..].iter().rev().copied().collect();
        slots.extend(diagram.top_ports[width..].iter().rev().copied());
        clasps.push(ClaspSpec { n, slots });
    }
    Ok(ClaspedDiagram { diagram, clasps })
}

/// Evaluate a diagram with pending clasp insertions: expand every clasp,
/// glue each combination of expansion terms, and evaluate the closures.
pub fn evaluate_clasped(cd: &ClaspedDiagram, limit: i64) -> Result<RationalQ, SkeinError> {
    let expansions: Vec<Vec<(RationalQ, WebDiagram)>> = cd
        .clasps
        .iter()
        .map(|spec| {
            if spec.slots.len() != 2 * spec.n.max(0) as usize {
                return Err(SkeinError::Malformed(format!(
                    "clasp spec for color {} must list {} slots",
                    spec.n,
                    2 * spec.n.max(0)
                )));
            }
            clasp_fragments(spec.n, limit)
        })
        .collect::<Result<_, _>>()?;
    let mut total = RationalQ::zero();
    let mut choice = vec![0usize; expansions.len()];
    loop {
        let mut d = cd.diagram.clone();
        let mut coeff = RationalQ::one();
        for (spec, (list, &pick)) in cd.clasps.iter().zip(expansions.iter().zip(&choice)) {
            let (c, frag) = &list[pick];
            coeff = &coeff * c;
            let (_doff, voff) = d.merge_arenas(frag);
            let n = spec.n as usize;
            for k in 0..n {
                d.glue_ports(spec.slots[k], frag.bottom_ports[k] + voff);
                d.glue_ports(spec.slots[n + k], frag.top_ports[k] + voff);
            }
        }
        if !d.is_closed() {
            return Err(SkeinError::NotClosed);
        }
        let value = evaluate_closed(&d)?;
        total = &total + &coeff.scaled_laurent(&value);
        // Odometer over the expansion choices.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(total);
            }
            choice[pos] += 1;
            if choice[pos] < expansions[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Directly evaluated invariant of the n-cabled, clasped (2,2m) torus link,
/// normalized by the clasped unknot value.
pub fn torus_invariant(
    m: i64,
    n: i64,
    limit: i64,
) -> Result<SixthPowerLaurent, SkeinError> {
    let cd = torus_link_diagram(m, n, limit)?;
    let bracket = evaluate_clasped(&cd, limit)?;
    let unknot = RationalQ::from_laurent(crate::websym::delta(n, 0));
    (&bracket / &unknot)
        .expect_laurent("clasped torus bracket over the unknot value")
        .map_err(SkeinError::Algebra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(p: SixthPowerLaurent) -> RationalQ {
        RationalQ::from_laurent(p)
    }

    #[test]
    fn w_closure_is_theta() {
        let mut w = w_fragment();
        w.validate().unwrap();
        close_trace(&mut w);
        let value = evaluate_closed(&w).unwrap();
        assert_eq!(value, &quantum_int(2) * &quantum_int(3));
    }

    #[test]
    fn w_squared_flattens_to_two_w() {
        // W o W = [2] W: after flattening, a single summand isomorphic to W
        // with coefficient [2].
        let ww = compose(&w_fragment(), &w_fragment());
        let flat = flatten_and_merge(vec![(RationalQ::one(), ww)]).unwrap();
        assert_eq!(flat.len(), 1);
        assert_eq!(flat[0].0, rq(quantum_int(2)));
        assert_eq!(
            canonical_signature(&flat[0].1),
            canonical_signature(&w_fragment())
        );
    }

    #[test]
    fn clasp_two_terms() {
        let terms = clasp_fragments(2, DEFAULT_COLOR_LIMIT).unwrap();
        assert_eq!(terms.len(), 2);
        let id_sig = canonical_signature(&identity_fragment(2));
        let w_sig = canonical_signature(&w_fragment());
        let mut found_id = false;
        let mut found_w = false;
        for (c, f) in &terms {
            let sig = canonical_signature(f);
            if sig == id_sig {
                assert_eq!(*c, RationalQ::one());
                found_id = true;
            } else if sig == w_sig {
                let expected =
                    -&RationalQ::new(quantum_int(1), quantum_int(2)).unwrap();
                assert_eq!(*c, expected);
                found_w = true;
            }
        }
        assert!(found_id && found_w, "clasp_2 must be id - W/[2]");
    }

    #[test]
    fn clasp_color_limit_enforced() {
        match clasp_fragments(4, 3) {
            Err(SkeinError::ColorLimit { n: 4, limit: 3 }) => {}
            other => panic!("expected color-limit error, got {other:?}"),
        }
    }

    #[test]
    fn hopf_oracle_matches_formula() {
        // Bracket q^{-8/3}(1+q+2q^2+2q^3+2q^4+q^5) over the loop value [3].
        let inv = torus_invariant(1, 1, DEFAULT_COLOR_LIMIT).unwrap();
        let expected = SixthPowerLaurent::from_terms(
            [(-10i64, 1), (2, 1), (8, 1)]
                .into_iter()
                .map(|(e, c)| (e, num_bigint::BigInt::from(c))),
        );
        assert_eq!(inv, expected);
    }
}
