//! Brute-force state sums. Both oracles work from the slot graph of a closed
//! diagram and use their own entry formulas, so they share nothing with the
//! contraction engine beyond the diagram type.

use crate::diagram::{Diagram, Orient, Tile};
use crate::laurent::LaurentPoly;
use crate::spintensor::{spin_value, CrossingKind, Spin};

use super::{require_closed, EvalContext, EvalError};

pub const DEFAULT_MAX_EDGES: usize = 16;
pub const DEFAULT_MAX_CROSSINGS: usize = 10;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
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

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexKind {
    Cross(CrossingKind),
    Alt { down_first: bool },
}

/// A four-legged tile; legs are slot ids in the order top-left, top-right,
/// bottom-left, bottom-right.
#[derive(Debug, Clone)]
struct Vertex {
    kind: VertexKind,
    legs: [usize; 4],
}

/// Slots are boundary points `(level, position)`, numbered level by level.
/// `links` are strand pieces through Id, cup and cap tiles, each with the
/// signed half-turn count it contributes.
struct SlotGraph {
    slots: usize,
    links: Vec<(usize, usize, i64)>,
    vertices: Vec<Vertex>,
}

fn slot_graph(d: &Diagram) -> SlotGraph {
    let levels = d.levels();
    let mut offsets = Vec::with_capacity(levels.len());
    let mut total = 0;
    for l in &levels {
        offsets.push(total);
        total += l.len();
    }
    let mut links = Vec::new();
    let mut vertices = Vec::new();
    for (si, slice) in d.slices().iter().enumerate() {
        let (above, below) = (offsets[si], offsets[si + 1]);
        let (mut i, mut o) = (0, 0);
        for t in &slice.tiles {
            match t {
                Tile::Id => links.push((above + i, below + o, 0)),
                Tile::CupRight | Tile::CupLeft => {
                    let sign = if *t == Tile::CupRight { 1 } else { -1 };
                    links.push((below + o, below + o + 1, sign));
                }
                Tile::CapRight | Tile::CapLeft => {
                    let sign = if *t == Tile::CapLeft { 1 } else { -1 };
                    links.push((above + i, above + i + 1, sign));
                }
                _ => {
                    let kind = match t.crossing_kind() {
                        Some(k) => VertexKind::Cross(k),
                        None => VertexKind::Alt {
                            down_first: levels[si][i] == Orient::Down,
                        },
                    };
                    vertices.push(Vertex {
                        kind,
                        legs: [above + i, above + i + 1, below + o, below + o + 1],
                    });
                }
            }
            i += t.width_in();
            o += t.width_out();
        }
    }
    SlotGraph {
        slots: total,
        links,
        vertices,
    }
}

/// Weight of a vertex at top spins `(a, b)` and bottom spins `(c, d)`.
fn vertex_entry(kind: VertexKind, gamma: &LaurentPoly, a: i32, b: i32, c: i32, d: i32) -> LaurentPoly {
    let mono = |terms: &[(i64, i64)]| LaurentPoly::from_terms(terms.iter().copied());
    match kind {
        VertexKind::Cross(k) => {
            let straight = a == c && b == d;
            let swapped = a == d && b == c;
            if straight && a == b {
                match k {
                    CrossingKind::Pos => mono(&[(2, 1)]),
                    CrossingKind::Neg => mono(&[(-2, 1)]),
                    CrossingKind::Sing => mono(&[(2, 1), (-2, 1)]),
                }
            } else if straight {
                match (k, a < b) {
                    (CrossingKind::Pos, true) => mono(&[(2, 1), (-2, -1)]),
                    (CrossingKind::Neg, false) => mono(&[(-2, 1), (2, -1)]),
                    (CrossingKind::Sing, true) => mono(&[(2, 1)]),
                    (CrossingKind::Sing, false) => mono(&[(-2, 1)]),
                    _ => LaurentPoly::zero(),
                }
            } else if swapped {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        }
        VertexKind::Alt { down_first } => {
            let mut v = LaurentPoly::zero();
            if a == c && b == d {
                v += gamma.clone();
            }
            if a == b && c == d {
                let e = (a + c) as i64;
                v += gamma * LaurentPoly::q_half_pow(if down_first { e } else { -e });
            }
            v
        }
    }
}

/// Sums over every assignment of spins to the edges of `d`.
pub fn oracle_edge_enumeration(d: &Diagram, ctx: &EvalContext) -> Result<LaurentPoly, EvalError> {
    oracle_edge_enumeration_capped(d, ctx, DEFAULT_MAX_EDGES)
}

pub fn oracle_edge_enumeration_capped(
    d: &Diagram,
    ctx: &EvalContext,
    max_edges: usize,
) -> Result<LaurentPoly, EvalError> {
    require_closed(d)?;
    d.validate()?;
    let g = slot_graph(d);
    let mut uf = UnionFind::new(g.slots);
    for &(x, y, _) in &g.links {
        uf.union(x, y);
    }
    let mut edge_of_root = vec![usize::MAX; g.slots];
    let mut edge_turns: Vec<i64> = Vec::new();
    // number edges in order of first use by a vertex so vertices close early
    let mut order: Vec<usize> = g.vertices.iter().flat_map(|v| v.legs).collect();
    order.extend(0..g.slots);
    for s in order {
        let r = uf.find(s);
        if edge_of_root[r] == usize::MAX {
            edge_of_root[r] = edge_turns.len();
            edge_turns.push(0);
        }
    }
    for &(x, _, t) in &g.links {
        let e = edge_of_root[uf.find(x)];
        edge_turns[e] += t;
    }
    let edges = edge_turns.len();
    if edges > max_edges {
        return Err(EvalError::TooLarge {
            what: "edges",
            found: edges,
            cap: max_edges,
        });
    }
    let vertices: Vec<(VertexKind, [usize; 4])> = g
        .vertices
        .iter()
        .map(|v| (v.kind, v.legs.map(|s| edge_of_root[uf.find(s)])))
        .collect();
    // vertices checked once their last edge is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); edges];
    for (vi, (_, legs)) in vertices.iter().enumerate() {
        ready[*legs.iter().max().unwrap()].push(vi);
    }
    let n = ctx.n();
    let spins: Vec<i32> = (0..n).map(|i| spin_value(n, i)).collect();
    let mut assignment = vec![0i32; edges];
    let mut total = LaurentPoly::zero();
    enumerate(
        0,
        LaurentPoly::one(),
        &mut assignment,
        &spins,
        &edge_turns,
        &vertices,
        &ready,
        ctx.gamma(),
        &mut total,
    );
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    depth: usize,
    acc: LaurentPoly,
    assignment: &mut [i32],
    spins: &[i32],
    turns: &[i64],
    vertices: &[(VertexKind, [usize; 4])],
    ready: &[Vec<usize>],
    gamma: &LaurentPoly,
    total: &mut LaurentPoly,
) {
    if depth == assignment.len() {
        *total += acc;
        return;
    }
    'spin: for &s in spins {
        assignment[depth] = s;
        let mut w = acc.shift_half(turns[depth] * s as i64);
        for &vi in &ready[depth] {
            let (kind, [tl, tr, bl, br]) = vertices[vi];
            let e = vertex_entry(
                kind,
                gamma,
                assignment[tl],
                assignment[tr],
                assignment[bl],
                assignment[br],
            );
            if e.is_zero() {
                continue 'spin;
            }
            w = w * e;
        }
        enumerate(depth + 1, w, assignment, spins, turns, vertices, ready, gamma, total);
    }
}

/// How a crossing is resolved in a rotation state. `Lt`, `Eq` and `Gt`
/// splice the strands vertically and compare the left label with the right
/// one; `Flat` lets them pass with different labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    Lt,
    Eq,
    Gt,
    Flat,
}

fn resolutions(kind: CrossingKind) -> Vec<(Resolution, LaurentPoly)> {
    let q = LaurentPoly::q();
    let qi = LaurentPoly::q_inv();
    match kind {
        CrossingKind::Pos => vec![
            (Resolution::Lt, &q - &qi),
            (Resolution::Eq, q),
            (Resolution::Flat, LaurentPoly::one()),
        ],
        CrossingKind::Neg => vec![
            (Resolution::Gt, &qi - &q),
            (Resolution::Eq, qi),
            (Resolution::Flat, LaurentPoly::one()),
        ],
        CrossingKind::Sing => vec![
            (Resolution::Lt, q.clone()),
            (Resolution::Gt, qi.clone()),
            (Resolution::Eq, &q + &qi),
            (Resolution::Flat, LaurentPoly::one()),
        ],
    }
}

/// `q^{Σ rot(l)·label(l)}` for a list of `(label, rot)` loops.
pub fn rotation_state_weight(loops: &[(Spin, i64)]) -> LaurentPoly {
    LaurentPoly::q_pow(loops.iter().map(|(s, r)| s.0 as i64 * r).sum())
}

/// Sums resolution weights times `q^{Σ rot·label}` over every consistent
/// labelled resolution of the crossings of `d`.
pub fn oracle_rotation_states(d: &Diagram, ctx: &EvalContext) -> Result<LaurentPoly, EvalError> {
    oracle_rotation_states_capped(d, ctx, DEFAULT_MAX_CROSSINGS)
}

pub fn oracle_rotation_states_capped(
    d: &Diagram,
    ctx: &EvalContext,
    max_crossings: usize,
) -> Result<LaurentPoly, EvalError> {
    require_closed(d)?;
    d.validate()?;
    let g = slot_graph(d);
    if g.vertices.iter().any(|v| matches!(v.kind, VertexKind::Alt { .. })) {
        return Err(EvalError::VertexUnsupported);
    }
    if g.vertices.len() > max_crossings {
        return Err(EvalError::TooLarge {
            what: "crossings",
            found: g.vertices.len(),
            cap: max_crossings,
        });
    }
    let options: Vec<Vec<(Resolution, LaurentPoly)>> = g
        .vertices
        .iter()
        .map(|v| match v.kind {
            VertexKind::Cross(k) => resolutions(k),
            VertexKind::Alt { .. } => unreachable!(),
        })
        .collect();
    let n = ctx.n();
    let spins: Vec<i32> = (0..n).map(|i| spin_value(n, i)).collect();
    let mut choice = vec![0usize; options.len()];
    let mut total = LaurentPoly::zero();
    loop {
        total += state_sum(&g, &options, &choice, &spins);
        // odometer over resolution choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(total);
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Contribution of one resolution choice, summed over loop labellings.
fn state_sum(
    g: &SlotGraph,
    options: &[Vec<(Resolution, LaurentPoly)>],
    choice: &[usize],
    spins: &[i32],
) -> LaurentPoly {
    let mut uf = UnionFind::new(g.slots);
    for &(x, y, _) in &g.links {
        uf.union(x, y);
    }
    let mut coeff = LaurentPoly::one();
    let mut constraints = Vec::new();
    for (v, (opts, &c)) in g.vertices.iter().zip(options.iter().zip(choice)) {
        let (res, w) = &opts[c];
        coeff *= w;
        let [tl, tr, bl, br] = v.legs;
        if *res == Resolution::Flat {
            uf.union(tl, br);
            uf.union(tr, bl);
        } else {
            uf.union(tl, bl);
            uf.union(tr, br);
        }
        constraints.push((*res, tl, tr));
    }
    let mut loop_of_root = vec![usize::MAX; g.slots];
    let mut turns: Vec<i64> = Vec::new();
    for s in 0..g.slots {
        let r = uf.find(s);
        if loop_of_root[r] == usize::MAX {
            loop_of_root[r] = turns.len();
            turns.push(0);
        }
    }
    for &(x, _, t) in &g.links {
        turns[loop_of_root[uf.find(x)]] += t;
    }
    let rots: Vec<i64> = turns
        .iter()
        .map(|t| {
            assert!(t % 2 == 0, "a closed loop makes whole turns");
            t / 2
        })
        .collect();
    let constraints: Vec<(Resolution, usize, usize)> = constraints
        .into_iter()
        .map(|(r, a, b)| (r, loop_of_root[uf.find(a)], loop_of_root[uf.find(b)]))
        .collect();
    // each constraint is checked as soon as both of its loops carry labels
    let mut ready: Vec<Vec<(Resolution, usize, usize)>> = vec![Vec::new(); rots.len()];
    for c in constraints {
        ready[c.1.max(c.2)].push(c);
    }
    let mut labels = vec![0i32; rots.len()];
    let mut sum = LaurentPoly::zero();
    label_loops(0, 0, &mut labels, spins, &rots, &ready, &mut sum);
    coeff * sum
}

fn label_loops(
    depth: usize,
    half_exp: i64,
    labels: &mut [i32],
    spins: &[i32],
    rots: &[i64],
    ready: &[Vec<(Resolution, usize, usize)>],
    sum: &mut LaurentPoly,
) {
    if depth == labels.len() {
        *sum += LaurentPoly::q_half_pow(half_exp);
        return;
    }
    for &s in spins {
        labels[depth] = s;
        let ok = ready[depth].iter().all(|&(r, a, b)| {
            let (x, y) = (labels[a], labels[b]);
            match r {
                Resolution::Lt => x < y,
                Resolution::Eq => x == y,
                Resolution::Gt => x > y,
                Resolution::Flat => x != y,
            }
        });
        if ok {
            let e = half_exp + 2 * rots[depth] * s as i64;
            label_loops(depth + 1, e, labels, spins, rots, ready, sum);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{close_braid, parse_braid_word, Diagram};

    fn ctx(n: usize) -> EvalContext {
        EvalContext::new(n).unwrap()
    }

    fn closure(w: &str, k: usize) -> Diagram {
        close_braid(&parse_braid_word(w, k).unwrap())
    }

    #[test]
    fn circle_both_oracles() {
        for n in 2..=4 {
            let qn = LaurentPoly::quantum_int(n as i64).unwrap();
            for ccw in [true, false] {
                let c = Diagram::circle(ccw);
                assert_eq!(oracle_edge_enumeration(&c, &ctx(n)).unwrap(), qn);
                assert_eq!(oracle_rotation_states(&c, &ctx(n)).unwrap(), qn);
            }
        }
    }

    #[test]
    fn example_state_weight() {
        let (a, b) = (Spin(1), Spin(-1));
        assert_eq!(
            rotation_state_weight(&[(a, 1), (a, 1), (b, -1)]),
            LaurentPoly::q_pow(2 + 1)
        );
    }

    #[test]
    fn unitarity_closure() {
        // two-component unlink
        let d = closure("s1 S1", 2);
        let two = LaurentPoly::quantum_int(2).unwrap().pow(2);
        assert_eq!(oracle_edge_enumeration(&d, &ctx(2)).unwrap(), two);
        assert_eq!(oracle_rotation_states(&d, &ctx(2)).unwrap(), two);
    }

    #[test]
    fn caps_enforced() {
        let d = closure("s1 s1 s1 s1 s1 s1 s1 s1 s1", 2);
        assert!(matches!(
            oracle_edge_enumeration_capped(&d, &ctx(2), 8),
            Err(EvalError::TooLarge { what: "edges", .. })
        ));
        assert!(matches!(
            oracle_rotation_states_capped(&d, &ctx(2), 8),
            Err(EvalError::TooLarge { what: "crossings", .. })
        ));
        let v = Diagram::new(
            vec![],
            vec![
                crate::diagram::Slice::new(vec![Tile::CupRight]),
                crate::diagram::Slice::new(vec![Tile::VertAlt]),
                crate::diagram::Slice::new(vec![Tile::CapLeft]),
            ],
        )
        .unwrap();
        assert_eq!(oracle_rotation_states(&v, &ctx(2)), Err(EvalError::VertexUnsupported));
        assert!(oracle_edge_enumeration(&v, &ctx(2)).is_ok());
    }
}
