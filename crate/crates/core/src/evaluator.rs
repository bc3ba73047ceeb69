//! Sparse slice-by-slice contraction of sliced diagrams, plus two brute-force
//! state-sum oracles used to cross-check it.

mod oracle;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::diagram::{self, Diagram, Orient, Tile, ValidationError};
use crate::laurent::LaurentPoly;
use crate::spintensor::{crossing_matrix, turn_tensor, CrossingKind, PolyMatrix, TensorError, TurnKind};

pub use oracle::{
    oracle_edge_enumeration, oracle_edge_enumeration_capped, oracle_rotation_states, oracle_rotation_states_capped,
    rotation_state_weight, Resolution, DEFAULT_MAX_CROSSINGS, DEFAULT_MAX_EDGES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("invalid diagram: {0}")]
    Invalid(#[from] ValidationError),
    #[error("closed diagram required, boundary has {top} strands on top and {bottom} below")]
    NotClosed { top: usize, bottom: usize },
    #[error("spin count {0} is too large for this evaluator")]
    TooManySpins(usize),
    #[error("diagram has {found} {what}, over the oracle cap of {cap}")]
    TooLarge {
        what: &'static str,
        found: usize,
        cap: usize,
    },
    #[error("the rotation-state oracle does not handle alternating vertices")]
    VertexUnsupported,
    #[error("model matrix for {0:?} has the wrong dimensions")]
    ModelShape(CrossingKind),
    #[error("closed evaluation produced a half-integer power of q: {0}")]
    HalfIntegerPower(LaurentPoly),
}

/// Elementary tensors used by the contraction. [`SpinModel::standard`]
/// gives the usual crossing matrices and turn weights; the setters exist so
/// that deliberately corrupted models can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinModel {
    n: usize,
    crossings: BTreeMap<CrossingKind, PolyMatrix>,
    turns: BTreeMap<TurnKind, Vec<LaurentPoly>>,
}

impl SpinModel {
    pub fn standard(n: usize) -> Result<Self, TensorError> {
        let mut crossings = BTreeMap::new();
        for kind in [CrossingKind::Pos, CrossingKind::Neg, CrossingKind::Sing] {
            crossings.insert(kind, crossing_matrix(kind, n)?);
        }
        let mut turns = BTreeMap::new();
        for kind in TurnKind::ALL {
            let m = turn_tensor(kind, n)?;
            turns.insert(kind, (0..n).map(|i| m.get(i, i)).collect());
        }
        Ok(Self { n, crossings, turns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossing(&self, kind: CrossingKind) -> &PolyMatrix {
        &self.crossings[&kind]
    }

    pub fn turn_weights(&self, kind: TurnKind) -> &[LaurentPoly] {
        &self.turns[&kind]
    }

    pub fn set_crossing(&mut self, kind: CrossingKind, m: PolyMatrix) -> Result<(), EvalError> {
        let d = self.n * self.n;
        if m.rows() != d || m.cols() != d {
            return Err(EvalError::ModelShape(kind));
        }
        self.crossings.insert(kind, m);
        Ok(())
    }

    /// Replaces the weights of one turn kind, indexed by spin position.
    pub fn set_turn_weights(&mut self, kind: TurnKind, weights: Vec<LaurentPoly>) {
        assert_eq!(weights.len(), self.n, "one weight per spin");
        self.turns.insert(kind, weights);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalContext {
    n: usize,
    gamma: LaurentPoly,
    model: SpinModel,
}

impl EvalContext {
    /// Standard model with `γ = 1`.
    pub fn new(n: usize) -> Result<Self, EvalError> {
        if n > u8::MAX as usize {
            return Err(EvalError::TooManySpins(n));
        }
        Ok(Self {
            n,
            gamma: LaurentPoly::one(),
            model: SpinModel::standard(n)?,
        })
    }

    pub fn with_gamma(mut self, gamma: LaurentPoly) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_model(mut self, model: SpinModel) -> Self {
        assert_eq!(model.n, self.n, "model built for a different n");
        self.model = model;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &LaurentPoly {
        &self.gamma
    }

    pub fn model(&self) -> &SpinModel {
        &self.model
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalStats {
    /// Largest support of the amplitude vector of a single starting
    /// boundary tuple, over all levels.
    pub peak_frontier: usize,
    /// Largest number of stored amplitudes at any level, all starting
    /// tuples together.
    pub peak_entries: usize,
    pub slices: usize,
}

impl EvalStats {
    fn record(&mut self, frontier: &Frontier) {
        let mut per_start: HashMap<usize, usize> = HashMap::new();
        for (start, _) in frontier.keys() {
            *per_start.entry(*start).or_default() += 1;
        }
        let widest = per_start.values().copied().max().unwrap_or(0);
        self.peak_frontier = self.peak_frontier.max(widest);
        self.peak_entries = self.peak_entries.max(frontier.len());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    TopDown,
    BottomUp,
}

/// A tile's tensor as rows indexed by the input tuple (base `n`, leftmost
/// leg most significant) holding `(output tuple, weight)`.
#[derive(Debug, Clone)]
struct LocalTensor {
    ins: usize,
    outs: usize,
    rows: Vec<Vec<(usize, LaurentPoly)>>,
}

impl LocalTensor {
    fn from_map(ins: usize, outs: usize, n: usize, map: BTreeMap<(usize, usize), LaurentPoly>) -> Self {
        let mut rows = vec![Vec::new(); n.pow(ins as u32)];
        for ((r, c), w) in map {
            if !w.is_zero() {
                rows[r].push((c, w));
            }
        }
        Self { ins, outs, rows }
    }

    fn transposed(&self, n: usize) -> Self {
        let mut map = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, w) in row {
                map.insert((*c, r), w.clone());
            }
        }
        Self::from_map(self.outs, self.ins, n, map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum LocalKey {
    Id,
    Turn(TurnKind),
    Cross(CrossingKind),
    /// Alternating vertex with the given leftmost leg orientation.
    Vert(bool),
}

fn local_key(tile: Tile, legs: &[Orient]) -> LocalKey {
    if let Some(k) = tile.turn_kind() {
        return LocalKey::Turn(k);
    }
    if let Some(k) = tile.crossing_kind() {
        return LocalKey::Cross(k);
    }
    match tile {
        Tile::VertAlt => LocalKey::Vert(legs[0] == Orient::Down),
        _ => LocalKey::Id,
    }
}

fn build_local(key: LocalKey, ctx: &EvalContext) -> LocalTensor {
    let n = ctx.n;
    let mut map = BTreeMap::new();
    match key {
        LocalKey::Id => {
            for a in 0..n {
                map.insert((a, a), LaurentPoly::one());
            }
            LocalTensor::from_map(1, 1, n, map)
        }
        LocalKey::Turn(k) => {
            let w = ctx.model.turn_weights(k);
            for (a, wa) in w.iter().enumerate().take(n) {
                let pair = a * n + a;
                let at = if k.is_cup() { (0, pair) } else { (pair, 0) };
                map.insert(at, wa.clone());
            }
            if k.is_cup() {
                LocalTensor::from_map(0, 2, n, map)
            } else {
                LocalTensor::from_map(2, 0, n, map)
            }
        }
        LocalKey::Cross(k) => {
            for (r, c, w) in ctx.model.crossing(k).iter() {
                map.insert((r, c), w.clone());
            }
            LocalTensor::from_map(2, 2, n, map)
        }
        LocalKey::Vert(down_first) => {
            // straight-through pair plus a cap above a cup, both weighted by γ
            let (cap, cup) = if down_first {
                (TurnKind::CapLeft, TurnKind::CupRight)
            } else {
                (TurnKind::CapRight, TurnKind::CupLeft)
            };
            let wcap = ctx.model.turn_weights(cap);
            let wcup = ctx.model.turn_weights(cup);
            let mut acc: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
            for (a, wa) in wcap.iter().enumerate().take(n) {
                for b in 0..n {
                    *acc.entry((a * n + b, a * n + b)).or_default() += ctx.gamma.clone();
                }
                for (c, wc) in wcup.iter().enumerate().take(n) {
                    let w = &ctx.gamma * wa * wc;
                    *acc.entry((a * n + a, c * n + c)).or_default() += w;
                }
            }
            LocalTensor::from_map(2, 2, n, acc)
        }
    }
}

fn tuple_index(digits: &[u8], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d as usize)
}

fn tuple_digits(mut index: usize, len: usize, n: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % n) as u8;
        index /= n;
    }
    out
}

type Frontier = HashMap<(usize, Vec<u8>), LaurentPoly>;

/// Applies one slice (tiles left to right) to every frontier entry.
fn apply_slice(frontier: Frontier, tiles: &[&LocalTensor], n: usize) -> Frontier {
    let mut next: Frontier = HashMap::new();
    for ((start, spins), amp) in frontier {
        let mut partial: Vec<(Vec<u8>, LaurentPoly)> = vec![(Vec::new(), amp)];
        let mut pos = 0;
        for t in tiles {
            let input = &spins[pos..pos + t.ins];
            pos += t.ins;
            if t.ins == 1 && t.outs == 1 && t.rows[input[0] as usize].len() == 1 {
                let (c, w) = &t.rows[input[0] as usize][0];
                if w.is_one() {
                    for (digits, _) in partial.iter_mut() {
                        digits.push(*c as u8);
                    }
                    continue;
                }
            }
            let row = &t.rows[tuple_index(input, n)];
            let mut grown = Vec::with_capacity(partial.len() * row.len());
            for (digits, w0) in &partial {
                for (c, w) in row {
                    let mut d = digits.clone();
                    d.extend(tuple_digits(*c, t.outs, n));
                    grown.push((d, w0 * w));
                }
            }
            partial = grown;
            if partial.is_empty() {
                break;
            }
        }
        for (digits, w) in partial {
            let slot = next.entry((start, digits)).or_default();
            *slot += w;
        }
    }
    next.retain(|_, v| !v.is_zero());
    next
}

fn contract(d: &Diagram, ctx: &EvalContext, sweep: Sweep) -> Result<(PolyMatrix, EvalStats), EvalError> {
    d.validate()?;
    let n = ctx.n;
    let levels = d.levels();
    let mut cache: BTreeMap<LocalKey, (LocalTensor, LocalTensor)> = BTreeMap::new();
    let mut keyed: Vec<Vec<LocalKey>> = Vec::new();
    for (si, slice) in d.slices().iter().enumerate() {
        let mut pos = 0;
        let mut keys = Vec::new();
        for t in &slice.tiles {
            let key = local_key(*t, &levels[si][pos..pos + t.width_in()]);
            pos += t.width_in();
            cache.entry(key).or_insert_with(|| {
                let fwd = build_local(key, ctx);
                let bwd = fwd.transposed(n);
                (fwd, bwd)
            });
            keys.push(key);
        }
        keyed.push(keys);
    }
    let (top_w, bottom_w) = (d.top().len(), d.bottom().len());
    let (start_w, end_w) = match sweep {
        Sweep::TopDown => (top_w, bottom_w),
        Sweep::BottomUp => (bottom_w, top_w),
    };
    let mut frontier: Frontier = HashMap::new();
    for s in 0..n.pow(start_w as u32) {
        frontier.insert((s, tuple_digits(s, start_w, n)), LaurentPoly::one());
    }
    let mut stats = EvalStats {
        peak_frontier: 0,
        peak_entries: 0,
        slices: keyed.len(),
    };
    stats.record(&frontier);
    let order: Vec<usize> = match sweep {
        Sweep::TopDown => (0..keyed.len()).collect(),
        Sweep::BottomUp => (0..keyed.len()).rev().collect(),
    };
    for si in order {
        let tiles: Vec<&LocalTensor> = keyed[si]
            .iter()
            .map(|k| {
                let (f, b) = &cache[k];
                if sweep == Sweep::TopDown {
                    f
                } else {
                    b
                }
            })
            .collect();
        frontier = apply_slice(frontier, &tiles, n);
        stats.record(&frontier);
    }
    let (rows, cols) = (n.pow(top_w as u32), n.pow(bottom_w as u32));
    let mut m = PolyMatrix::zeros(rows, cols);
    for ((start, digits), w) in frontier {
        let end = tuple_index(&digits, n);
        debug_assert_eq!(digits.len(), end_w);
        match sweep {
            Sweep::TopDown => m.set(start, end, w),
            Sweep::BottomUp => m.set(end, start, w),
        }
    }
    Ok((m, stats))
}

/// Tensor of `d` with rows indexed by top boundary spins and columns by
/// bottom boundary spins. A closed diagram gives a `1 × 1` matrix.
pub fn evaluate_tangle(d: &Diagram, ctx: &EvalContext) -> Result<PolyMatrix, EvalError> {
    Ok(contract(d, ctx, Sweep::TopDown)?.0)
}

/// [`evaluate_tangle`] with a choice of sweep direction and contraction stats.
pub fn evaluate_tangle_with(
    d: &Diagram,
    ctx: &EvalContext,
    sweep: Sweep,
) -> Result<(PolyMatrix, EvalStats), EvalError> {
    contract(d, ctx, sweep)
}

fn require_closed(d: &Diagram) -> Result<(), EvalError> {
    if d.is_closed() {
        Ok(())
    } else {
        Err(EvalError::NotClosed {
            top: d.top().len(),
            bottom: d.bottom().len(),
        })
    }
}

pub fn evaluate_closed(d: &Diagram, ctx: &EvalContext) -> Result<LaurentPoly, EvalError> {
    require_closed(d)?;
    let v = evaluate_tangle(d, ctx)?.get(0, 0);
    if !v.has_integer_powers() {
        return Err(EvalError::HalfIntegerPower(v));
    }
    Ok(v)
}

/// `q^{-writhe(d)} · evaluate_closed(d)`.
pub fn normalized_invariant(d: &Diagram, ctx: &EvalContext) -> Result<LaurentPoly, EvalError> {
    let v = evaluate_closed(d, ctx)?;
    Ok(v * LaurentPoly::q_pow(-diagram::writhe(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_diagram, close_braid, parse_braid_word, Slice};
    use Orient::{Down, Up};

    fn ctx(n: usize) -> EvalContext {
        EvalContext::new(n).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn qint(m: i64) -> LaurentPoly {
        LaurentPoly::quantum_int(m).unwrap()
    }

    fn kink(kind: CrossingKind) -> Diagram {
        Diagram::new(
            vec![Down],
            vec![
                Slice::new(vec![Tile::Id, Tile::CupRight]),
                Slice::new(vec![Tile::from_crossing(kind), Tile::Id]),
                Slice::new(vec![Tile::Id, Tile::CapLeft]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn circles() {
        for n in 2..=5 {
            let c = ctx(n);
            assert_eq!(evaluate_closed(&Diagram::circle(true), &c).unwrap(), qint(n as i64));
            assert_eq!(evaluate_closed(&Diagram::circle(false), &c).unwrap(), qint(n as i64));
        }
    }

    #[test]
    fn kinks() {
        for n in 2..=4 {
            let c = ctx(n);
            let pos = evaluate_tangle(&kink(CrossingKind::Pos), &c).unwrap();
            assert_eq!(pos, PolyMatrix::identity(n).scale(&LaurentPoly::q_pow(n as i64)));
            let neg = evaluate_tangle(&kink(CrossingKind::Neg), &c).unwrap();
            assert_eq!(neg, PolyMatrix::identity(n).scale(&LaurentPoly::q_pow(-(n as i64))));
        }
    }

    #[test]
    fn braid_tangle_is_crossing_matrix() {
        let c = ctx(3);
        let w = parse_braid_word("s1", 2).unwrap();
        let m = evaluate_tangle(&braid_to_diagram(&w), &c).unwrap();
        assert_eq!(m, crossing_matrix(CrossingKind::Pos, 3).unwrap());
    }

    #[test]
    fn sweeps_agree() {
        let c = ctx(2).with_gamma(p("q"));
        let d = Diagram::crossing_rightward(CrossingKind::Sing)
            .compose(&Diagram::vert_alt(Up))
            .unwrap();
        let (a, _) = evaluate_tangle_with(&d, &c, Sweep::TopDown).unwrap();
        let (b, _) = evaluate_tangle_with(&d, &c, Sweep::BottomUp).unwrap();
        assert_eq!(a, b);
        let t = close_braid(&parse_braid_word("s1 S2 t1 s2", 3).unwrap());
        let (a, sa) = evaluate_tangle_with(&t, &c, Sweep::TopDown).unwrap();
        let (b, _) = evaluate_tangle_with(&t, &c, Sweep::BottomUp).unwrap();
        assert_eq!(a, b);
        assert!(sa.peak_frontier <= 2usize.pow(t.max_width() as u32));
    }

    #[test]
    fn open_diagram_is_not_closed() {
        let d = Diagram::crossing(CrossingKind::Pos);
        assert_eq!(
            evaluate_closed(&d, &ctx(2)),
            Err(EvalError::NotClosed { top: 2, bottom: 2 })
        );
        assert!(EvalContext::new(1).is_err());
    }

    #[test]
    fn normalization() {
        let c = ctx(2);
        let t = close_braid(&parse_braid_word("s1 s1 s1", 2).unwrap());
        let v = evaluate_closed(&t, &c).unwrap();
        assert_eq!(normalized_invariant(&t, &c).unwrap(), v * LaurentPoly::q_pow(-3));
        let u = close_braid(&parse_braid_word("s1 S1", 2).unwrap());
        assert_eq!(normalized_invariant(&u, &c).unwrap(), qint(2).pow(2));
        let u = close_braid(&parse_braid_word("s1 S2", 3).unwrap());
        assert_eq!(normalized_invariant(&u, &c).unwrap(), qint(2));
    }

    #[test]
    fn vertex_tensor_support() {
        let c = ctx(2).with_gamma(p("q"));
        let m = evaluate_tangle(&Diagram::vert_alt(Down), &c).unwrap();
        // (a,b) -> (a,b) always, plus (a,a) -> (c,c)
        for (r, col, _) in m.iter() {
            let (a, b) = (r / 2, r % 2);
            let (x, y) = (col / 2, col % 2);
            assert!((a, b) == (x, y) || (a == b && x == y));
        }
        assert_eq!(m.get(0, 0), p("1 + q"));
        assert_eq!(m.get(0, 3), p("q"));
        assert_eq!(m.get(1, 1), p("q"));
    }

    #[test]
    fn connected_sum_divides_by_loop_value() {
        for n in 2..=4 {
            let c = ctx(n);
            let circle = Diagram::circle(true);
            let s = crate::diagram::connected_sum(&circle, &circle).unwrap();
            assert_eq!(evaluate_closed(&s, &c).unwrap(), qint(n as i64));
            let t = close_braid(&parse_braid_word("s1 s1 s1", 2).unwrap());
            let tt = crate::diagram::connected_sum(&t, &t).unwrap();
            let v = evaluate_closed(&t, &c).unwrap();
            assert_eq!(evaluate_closed(&tt, &c).unwrap() * qint(n as i64), &v * &v);
        }
    }
}
