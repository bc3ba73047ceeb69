//! Exact checks of the algebraic and diagrammatic identities satisfied by the
//! state model, as equalities of polynomial matrices at a fixed `n`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::braidrep;
use crate::diagram::{braid_to_diagram, BraidLetter, BraidWord, Diagram, Orient, Slice, Tile};
use crate::evaluator::{evaluate_tangle, EvalContext, EvalError, SpinModel};
use crate::laurent::LaurentPoly;
use crate::spintensor::{spin_value, CrossingKind, PolyMatrix, TurnKind};

use CrossingKind::{Neg, Pos, Sing};
use Orient::{Down, Up};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckEntry {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.push(CheckEntry::new(name, passed));
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn find(&self, prefix: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name.starts_with(prefix))
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for e in &self.entries {
            let tag = if e.passed { "PASS" } else { "FAIL" };
            match &e.detail {
                Some(d) => writeln!(f, "{tag} {} ({d})", e.name)?,
                None => writeln!(f, "{tag} {}", e.name)?,
            }
        }
        Ok(())
    }
}

fn q() -> LaurentPoly {
    LaurentPoly::q()
}

fn qi() -> LaurentPoly {
    LaurentPoly::q_inv()
}

fn qint(m: i64) -> LaurentPoly {
    LaurentPoly::quantum_int(m).expect("non-negative")
}

fn id(n: usize) -> PolyMatrix {
    PolyMatrix::identity(n)
}

fn mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.mat_mul(b).expect("compatible shapes")
}

fn tangle(d: &Diagram, ctx: &EvalContext) -> Result<PolyMatrix, EvalError> {
    evaluate_tangle(d, ctx)
}

fn stack(parts: &[Diagram]) -> Diagram {
    let mut d = parts[0].clone();
    for p in &parts[1..] {
        d = d.compose(p).expect("matching boundaries");
    }
    d
}

fn slices(top: Vec<Orient>, rows: Vec<Vec<Tile>>) -> Diagram {
    Diagram::new(top, rows.into_iter().map(Slice::new).collect()).expect("valid construction")
}

/// `(R ⊗ I)(I ⊗ R)(R ⊗ I) = (I ⊗ R)(R ⊗ I)(I ⊗ R)`.
pub fn satisfies_ybe(r: &PolyMatrix, n: usize) -> bool {
    let left = r.kron(&id(n));
    let right = id(n).kron(r);
    mul(&mul(&left, &right), &left) == mul(&mul(&right, &left), &right)
}

pub fn check_ybe(n: usize) -> Result<CheckReport, EvalError> {
    check_ybe_with(&EvalContext::new(n)?)
}

pub fn check_ybe_with(ctx: &EvalContext) -> Result<CheckReport, EvalError> {
    let n = ctx.n();
    let m = ctx.model();
    let mut r = CheckReport::new(format!("Yang-Baxter, n={n}"));
    r.check("ybe R", satisfies_ybe(m.crossing(Pos), n));
    r.check("ybe Rbar", satisfies_ybe(m.crossing(Neg), n));
    Ok(r)
}

/// Row vector of a cup (`1 × n²`) or column vector of a cap (`n² × 1`).
fn turn_vector(model: &SpinModel, kind: TurnKind) -> PolyMatrix {
    let n = model.n();
    let w = model.turn_weights(kind);
    let mut m = if kind.is_cup() {
        PolyMatrix::zeros(1, n * n)
    } else {
        PolyMatrix::zeros(n * n, 1)
    };
    for (a, wa) in w.iter().enumerate() {
        if kind.is_cup() {
            m.set(0, a * n + a, wa.clone());
        } else {
            m.set(a * n + a, 0, wa.clone());
        }
    }
    m
}

/// The four ways of straightening a cup followed by a cap, as
/// `(name, cup on the right, cup, cap, strand orientation)`.
const ZIGZAGS: [(&str, bool, TurnKind, TurnKind, Orient); 4] = [
    (
        "zig-zag down, cup right of strand",
        true,
        TurnKind::CupLeft,
        TurnKind::CapLeft,
        Down,
    ),
    (
        "zig-zag down, cup left of strand",
        false,
        TurnKind::CupRight,
        TurnKind::CapRight,
        Down,
    ),
    (
        "zig-zag up, cup right of strand",
        true,
        TurnKind::CupRight,
        TurnKind::CapRight,
        Up,
    ),
    (
        "zig-zag up, cup left of strand",
        false,
        TurnKind::CupLeft,
        TurnKind::CapLeft,
        Up,
    ),
];

pub fn zigzag_diagram(cup_right_of_strand: bool, cup: TurnKind, cap: TurnKind, strand: Orient) -> Diagram {
    let (cup, cap) = (Tile::from_turn(cup), Tile::from_turn(cap));
    if cup_right_of_strand {
        slices(vec![strand], vec![vec![Tile::Id, cup], vec![cap, Tile::Id]])
    } else {
        slices(vec![strand], vec![vec![cup, Tile::Id], vec![Tile::Id, cap]])
    }
}

/// A strand crossing over itself in a small loop on its right, oriented
/// downward.
pub fn kink(kind: CrossingKind) -> Diagram {
    slices(
        vec![Down],
        vec![
            vec![Tile::Id, Tile::CupRight],
            vec![Tile::from_crossing(kind), Tile::Id],
            vec![Tile::Id, Tile::CapLeft],
        ],
    )
}

/// The same loop on the left of the strand.
pub fn kink_left(kind: CrossingKind) -> Diagram {
    slices(
        vec![Down],
        vec![
            vec![Tile::CupLeft, Tile::Id],
            vec![Tile::Id, Tile::from_crossing(kind)],
            vec![Tile::CapRight, Tile::Id],
        ],
    )
}

/// `Σ_{i,j} Rbar[(i,a),(j,b)] R[(j,d),(i,c)]` as a matrix indexed by
/// `((a,b),(c,d))`. With `turns` each term carries `q^{(a+b-i-j)/2}`, the
/// weight of the turnbacks the twisted indices run through.
pub fn cross_channel_sum(r: &PolyMatrix, rb: &PolyMatrix, n: usize, turns: bool) -> PolyMatrix {
    let s = |x: usize| spin_value(n, x) as i64;
    let mut out = PolyMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = LaurentPoly::zero();
                    for i in 0..n {
                        for j in 0..n {
                            let t = rb.get(i * n + a, j * n + b) * r.get(j * n + d, i * n + c);
                            acc += if turns {
                                t.shift_half(s(a) + s(b) - s(i) - s(j))
                            } else {
                                t
                            };
                        }
                    }
                    out.set(a * n + b, c * n + d, acc);
                }
            }
        }
    }
    out
}

/// `δ(a,c) δ(d,b)` in the same indexing.
pub fn cross_channel_target(n: usize) -> PolyMatrix {
    id(n * n)
}

pub fn check_unitarity(n: usize) -> Result<CheckReport, EvalError> {
    check_unitarity_with(&EvalContext::new(n)?)
}

pub fn check_unitarity_with(ctx: &EvalContext) -> Result<CheckReport, EvalError> {
    let n = ctx.n();
    let m = ctx.model();
    let (r, rb) = (m.crossing(Pos), m.crossing(Neg));
    let mut rep = CheckReport::new(format!("unitarity, n={n}"));
    rep.check("channel R Rbar = I", mul(r, rb) == id(n * n));
    rep.check("channel Rbar R = I", mul(rb, r) == id(n * n));

    rep.check(
        "cross-channel index identity",
        cross_channel_sum(r, rb, n, true) == cross_channel_target(n),
    );
    for (x, y) in [(Pos, Neg), (Neg, Pos)] {
        let d = Diagram::crossing_rightward(x)
            .compose(&Diagram::crossing_leftward(y))
            .unwrap();
        rep.check(
            format!("cross-channel tangle {x:?} then {y:?}, left-to-right first"),
            tangle(&d, ctx)? == id(n * n),
        );
        let d = Diagram::crossing_leftward(x)
            .compose(&Diagram::crossing_rightward(y))
            .unwrap();
        rep.check(
            format!("cross-channel tangle {x:?} then {y:?}, right-to-left first"),
            tangle(&d, ctx)? == id(n * n),
        );
    }
    for (name, right, cup, cap, strand) in ZIGZAGS {
        let (cv, kv) = (turn_vector(m, cup), turn_vector(m, cap));
        let product = if right {
            mul(&id(n).kron(&cv), &kv.kron(&id(n)))
        } else {
            mul(&cv.kron(&id(n)), &id(n).kron(&kv))
        };
        rep.check(format!("{name} (matrix)"), product == id(n));
        let d = zigzag_diagram(right, cup, cap, strand);
        rep.check(format!("{name} (tangle)"), tangle(&d, ctx)? == id(n));
    }
    Ok(rep)
}

pub fn check_singular_relations(n: usize) -> Result<CheckReport, EvalError> {
    check_singular_relations_with(&EvalContext::new(n)?)
}

pub fn check_singular_relations_with(ctx: &EvalContext) -> Result<CheckReport, EvalError> {
    let n = ctx.n();
    let m = ctx.model();
    let (r, rb, qm) = (m.crossing(Pos), m.crossing(Neg), m.crossing(Sing));
    let i2 = id(n * n);
    let mut rep = CheckReport::new(format!("singular relations, n={n}"));
    rep.check("R Q = q Q", mul(r, qm) == qm.scale(&q()));
    rep.check("Q R = q Q", mul(qm, r) == qm.scale(&q()));
    rep.check("Rbar Q = q^-1 Q", mul(rb, qm) == qm.scale(&qi()));
    rep.check("Q Rbar = q^-1 Q", mul(qm, rb) == qm.scale(&qi()));
    rep.check("Q = R + q^-1 I", *qm == r.add(&i2.scale(&qi())));
    rep.check("Q = Rbar + q I", *qm == rb.add(&i2.scale(&q())));
    rep.check("R - Rbar = (q - q^-1) I", r.sub(rb) == i2.scale(&(q() - qi())));
    let mut support_ok = true;
    for (row, col, _) in qm.iter() {
        let (a, b, c, d) = (row / n, row % n, col / n, col % n);
        support_ok &= (a == c && b == d) || (d == a && a != b && b == c);
    }
    rep.check("Q supported on a=c,b=d or d=a!=b=c", support_ok);
    let mut conserved = true;
    for kind in [Pos, Neg, Sing] {
        for (row, col, _) in m.crossing(kind).iter() {
            let s = |i: usize| spin_value(n, i);
            conserved &= s(row / n) + s(row % n) == s(col / n) + s(col % n);
        }
    }
    rep.check("spin conservation a+b=c+d", conserved);
    let skein = tangle(&Diagram::crossing(Pos), ctx)?.sub(&tangle(&Diagram::crossing(Neg), ctx)?);
    rep.check(
        "skein <pos> - <neg> = (q - q^-1) <2 arcs>",
        skein == i2.scale(&(q() - qi())),
    );
    Ok(rep)
}

/// A vertex with a classical crossing stacked above (`curl_first`) or below it.
pub fn curl_vertex(kind: CrossingKind, curl_first: bool) -> Diagram {
    let (x, v) = (Diagram::crossing(kind), Diagram::crossing(Sing));
    if curl_first {
        x.compose(&v).unwrap()
    } else {
        v.compose(&x).unwrap()
    }
}

pub fn check_curl_vertex(n: usize) -> Result<CheckReport, EvalError> {
    check_curl_vertex_with(&EvalContext::new(n)?)
}

pub fn check_curl_vertex_with(ctx: &EvalContext) -> Result<CheckReport, EvalError> {
    let n = ctx.n();
    let flat = tangle(&Diagram::crossing(Sing), ctx)?;
    let mut rep = CheckReport::new(format!("curl on a vertex, n={n}"));
    for (kind, factor, label) in [(Pos, q(), "positive"), (Neg, qi(), "negative")] {
        for (first, place) in [(true, "above"), (false, "below")] {
            let t = tangle(&curl_vertex(kind, first), ctx)?;
            rep.check(
                format!(
                    "{label} curl {place} vertex = q^{} Q",
                    if kind == Pos { "1" } else { "-1" }
                ),
                t == flat.scale(&factor),
            );
        }
    }
    Ok(rep)
}

/// Flat kink: a vertex with two adjacent legs joined, on the right or left.
pub fn flat_kink(right: bool) -> Diagram {
    if right {
        kink(Sing)
    } else {
        kink_left(Sing)
    }
}

/// Two antiparallel strands joined by two vertices, `↓ ↑` on top.
pub fn antiparallel_bigon(down_first: bool) -> Diagram {
    if down_first {
        Diagram::crossing_rightward(Sing)
            .compose(&Diagram::crossing_leftward(Sing))
            .unwrap()
    } else {
        Diagram::crossing_leftward(Sing)
            .compose(&Diagram::crossing_rightward(Sing))
            .unwrap()
    }
}

/// A cap above a cup with legs `legs` on both sides.
pub fn cap_cup(legs: [Orient; 2]) -> Diagram {
    let cap = Tile::cap_for(legs).expect("opposite legs");
    let cup = Tile::cup_for(legs).expect("opposite legs");
    slices(legs.to_vec(), vec![vec![cap], vec![cup]])
}

fn braid(letters: &[(CrossingKind, usize)], strands: usize) -> Diagram {
    let w =
        BraidWord::new(strands, letters.iter().map(|&(k, i)| BraidLetter::new(k, i)).collect()).expect("valid word");
    braid_to_diagram(&w)
}

/// Three-vertex triangle with the middle strand reversed, paired with the
/// cap-cup on the two strands its first and last vertices join.
/// `mirrored` reflects both in a vertical line.
pub fn reversed_triangle(mirrored: bool) -> (Diagram, Diagram) {
    let top = vec![Down, Up, Down];
    if !mirrored {
        let f = stack(&[
            Diagram::crossing_rightward(Sing).embed(vec![], vec![Down]),
            Diagram::crossing(Sing).embed(vec![Up], vec![]),
            Diagram::crossing_leftward(Sing).embed(vec![], vec![Down]),
        ]);
        let s = slices(top, vec![vec![Tile::CapLeft, Tile::Id], vec![Tile::CupRight, Tile::Id]]);
        (f, s)
    } else {
        let f = stack(&[
            Diagram::crossing_leftward(Sing).embed(vec![Down], vec![]),
            Diagram::crossing(Sing).embed(vec![], vec![Up]),
            Diagram::crossing_rightward(Sing).embed(vec![Down], vec![]),
        ]);
        let s = slices(top, vec![vec![Tile::Id, Tile::CapRight], vec![Tile::Id, Tile::CupLeft]]);
        (f, s)
    }
}

pub fn check_moy(n: usize) -> Result<CheckReport, EvalError> {
    check_moy_with(&EvalContext::new(n)?)
}

pub fn check_moy_with(ctx: &EvalContext) -> Result<CheckReport, EvalError> {
    let n = ctx.n();
    let ni = n as i64;
    let mut rep = CheckReport::new(format!("graph skein relations, n={n}"));
    let arc = id(n);
    for right in [true, false] {
        let side = if right { "right" } else { "left" };
        rep.check(
            format!("flat kink ({side}) = [n+1] arc"),
            tangle(&flat_kink(right), ctx)? == arc.scale(&qint(ni + 1)),
        );
    }
    let vertex = tangle(&Diagram::crossing(Sing), ctx)?;
    let bigon = Diagram::crossing(Sing).compose(&Diagram::crossing(Sing)).unwrap();
    rep.check(
        "parallel bigon = [2] vertex",
        tangle(&bigon, ctx)? == vertex.scale(&qint(2)),
    );
    for (down_first, legs) in [(true, [Down, Up]), (false, [Up, Down])] {
        let lhs = tangle(&antiparallel_bigon(down_first), ctx)?;
        let rhs = id(n * n).add(&tangle(&cap_cup(legs), ctx)?.scale(&qint(ni + 2)));
        let label = if down_first { "down-up" } else { "up-down" };
        rep.check(
            format!("antiparallel bigon ({label}) = 2 arcs + [n+2] cap-cup"),
            lhs == rhs,
        );
    }
    let t = |ls: &[(CrossingKind, usize)]| tangle(&braid(ls, 3), ctx);
    let lhs = t(&[(Sing, 1), (Sing, 2), (Sing, 1)])?.add(&t(&[(Sing, 2)])?);
    let rhs = t(&[(Sing, 2), (Sing, 1), (Sing, 2)])?.add(&t(&[(Sing, 1)])?);
    rep.check("vertex triangle: t1 t2 t1 + t2 = t2 t1 t2 + t1", lhs == rhs);
    let (f, s) = reversed_triangle(false);
    let (fm, sm) = reversed_triangle(true);
    let c = qint(ni + 3);
    let lhs = tangle(&f, ctx)?.sub(&tangle(&s, ctx)?.scale(&c));
    let rhs = tangle(&fm, ctx)?.sub(&tangle(&sm, ctx)?.scale(&c));
    rep.check("reversed triangle: F - [n+3] S = F' - [n+3] S'", lhs == rhs);
    Ok(rep)
}

/// A crossing of two downward strands followed, on the strand to its right,
/// by a left-to-right crossing with an upward strand; used to drag a strand
/// across an alternating vertex.
fn vertex_r4_sides(over: bool) -> (Diagram, Diagram) {
    let (x, xr) = if over { (Neg, Pos) } else { (Pos, Neg) };
    let cross = Diagram::crossing(x).embed(vec![], vec![Up]);
    let rot = Diagram::crossing_rightward(xr).embed(vec![Down], vec![]);
    let lhs = stack(&[
        cross.clone(),
        rot.clone(),
        Diagram::vert_alt(Down).embed(vec![], vec![Down]),
    ]);
    let rhs = stack(&[Diagram::vert_alt(Down).embed(vec![Down], vec![]), cross, rot]);
    (lhs, rhs)
}

/// Vertex followed by a rotated crossing on its two lower legs, and the same
/// crossing moved above the vertex.
fn vertex_r5_sides(kind: CrossingKind, rightward: bool) -> (Diagram, Diagram) {
    if rightward {
        let x = Diagram::crossing_rightward(kind);
        (
            Diagram::vert_alt(Down).compose(&x).unwrap(),
            x.compose(&Diagram::vert_alt(Up)).unwrap(),
        )
    } else {
        let x = Diagram::crossing_leftward(kind);
        (
            Diagram::vert_alt(Up).compose(&x).unwrap(),
            x.compose(&Diagram::vert_alt(Down)).unwrap(),
        )
    }
}

/// A singular crossing with one leg twisted around by a rotated crossing,
/// bounded by `↓ ↑` above and below.
pub fn twisted_vertex(kind: CrossingKind) -> Diagram {
    stack(&[
        slices(vec![Down, Up], vec![vec![Tile::Id, Tile::CupRight, Tile::Id]]),
        Diagram::crossing(Sing).embed(vec![], vec![Up, Up]),
        Diagram::crossing_rightward(kind).embed(vec![Down], vec![Up]),
        slices(vec![Down, Up, Down, Up], vec![vec![Tile::Id, Tile::Id, Tile::CapLeft]]),
    ])
}

fn eval_entries(m: &PolyMatrix, q0: i64) -> Result<bool, EvalError> {
    let q0 = BigRational::from_integer(q0.into());
    for (_, _, p) in m.iter() {
        let v = p
            .eval_at(&q0, &BigRational::one())
            .expect("nonzero point with square root");
        if !v.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_gamma_extension(n: usize, gamma: &LaurentPoly) -> Result<CheckReport, EvalError> {
    let ctx = EvalContext::new(n)?.with_gamma(gamma.clone());
    let mut rep = CheckReport::new(format!("alternating vertices, n={n}, gamma={gamma}"));
    for over in [true, false] {
        let (l, r) = vertex_r4_sides(over);
        let label = if over { "over" } else { "under" };
        rep.check(
            format!("R4 strand {label} alternating vertex"),
            tangle(&l, &ctx)? == tangle(&r, &ctx)?,
        );
    }
    for kind in [Pos, Neg] {
        for rightward in [true, false] {
            let (l, r) = vertex_r5_sides(kind, rightward);
            let dir = if rightward { "rightward" } else { "leftward" };
            rep.check(
                format!("R5 {kind:?} {dir} crossing through alternating vertex"),
                tangle(&l, &ctx)? == tangle(&r, &ctx)?,
            );
        }
    }
    let defects = |c: &EvalContext| -> Result<[PolyMatrix; 2], EvalError> {
        let v = tangle(&Diagram::vert_alt(Down), c)?;
        Ok([
            tangle(&twisted_vertex(Pos), c)?.sub(&v.scale(&q())),
            tangle(&twisted_vertex(Neg), c)?.sub(&v.scale(&qi())),
        ])
    };
    for (d, sign) in defects(&ctx)?.iter().zip(["+", "-"]) {
        let text = d
            .iter()
            .map(|(r, c, p)| format!("[{r},{c}] {p}"))
            .collect::<Vec<_>>()
            .join("; ");
        rep.push(
            CheckEntry::new(format!("twist defect {sign} (gamma={gamma})"), true).with_detail(if text.is_empty() {
                "0".into()
            } else {
                text
            }),
        );
    }
    let unit = EvalContext::new(n)?;
    let [dp, dm] = defects(&unit)?;
    rep.check(
        "twist defects vanish at q=1, gamma=1",
        eval_entries(&dp, 1)? && eval_entries(&dm, 1)?,
    );
    rep.check(
        "twist defects nonzero symbolically at gamma=1",
        !dp.is_zero() && !dm.is_zero(),
    );
    Ok(rep)
}

/// Every matrix-level and tangle-level check at `n`, with the monoid
/// relations on `strands` strands.
pub fn check_all(n: usize, strands: usize, gamma: &LaurentPoly) -> Result<CheckReport, EvalError> {
    let mut rep = CheckReport::new(format!("all identities, n={n}"));
    rep.extend(check_ybe(n)?);
    rep.extend(check_unitarity(n)?);
    rep.extend(check_singular_relations(n)?);
    rep.extend(check_curl_vertex(n)?);
    rep.extend(check_moy(n)?);
    rep.extend(check_gamma_extension(n, gamma)?);
    rep.extend(braidrep::check_monoid_relations(n, strands)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_n2() {
        for r in [
            check_ybe(2).unwrap(),
            check_unitarity(2).unwrap(),
            check_singular_relations(2).unwrap(),
            check_curl_vertex(2).unwrap(),
            check_moy(2).unwrap(),
            check_gamma_extension(2, &LaurentPoly::q()).unwrap(),
        ] {
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn cross_channel_needs_turn_weights() {
        let r = crate::spintensor::crossing_matrix(Pos, 2).unwrap();
        let rb = crate::spintensor::crossing_matrix(Neg, 2).unwrap();
        let bare = cross_channel_sum(&r, &rb, 2, false);
        // a = b = -1, c = d = 1
        assert_eq!(bare.get(0, 3), -(q() - qi()).pow(2));
        for n in 2..=4 {
            let r = crate::spintensor::crossing_matrix(Pos, n).unwrap();
            let rb = crate::spintensor::crossing_matrix(Neg, n).unwrap();
            assert_eq!(cross_channel_sum(&r, &rb, n, true), cross_channel_target(n));
        }
    }

    #[test]
    fn twisted_vertex_expansion() {
        for n in 2..=4 {
            let ctx = EvalContext::new(n).unwrap();
            let straight = id(n * n);
            let turned = tangle(&cap_cup([Down, Up]), &ctx).unwrap();
            let e = n as i64 + 1;
            assert_eq!(
                tangle(&twisted_vertex(Pos), &ctx).unwrap(),
                straight.scale(&LaurentPoly::q_pow(e)).add(&turned)
            );
            assert_eq!(
                tangle(&twisted_vertex(Neg), &ctx).unwrap(),
                straight.scale(&LaurentPoly::q_pow(-e)).add(&turned)
            );
        }
    }

    fn corrupted(n: usize, f: impl FnOnce(&mut SpinModel)) -> EvalContext {
        let mut m = SpinModel::standard(n).unwrap();
        f(&mut m);
        EvalContext::new(n).unwrap().with_model(m)
    }

    #[test]
    fn negative_controls_fail() {
        let n = 2;
        let bad_r = corrupted(n, |m| {
            let r = m.crossing(Pos).map_entries(|p| {
                if *p == q() - qi() {
                    LaurentPoly::one()
                } else {
                    p.clone()
                }
            });
            m.set_crossing(Pos, r).unwrap();
        });
        let rep = check_ybe_with(&bad_r).unwrap();
        assert!(!rep.find("ybe R").unwrap().passed);
        assert!(rep.find("ybe Rbar").unwrap().passed);

        let bad_turn = corrupted(n, |m| {
            let w = m.turn_weights(TurnKind::CupLeft).iter().map(|p| p.invert_q()).collect();
            m.set_turn_weights(TurnKind::CupLeft, w);
        });
        let rep = check_unitarity_with(&bad_turn).unwrap();
        assert!(!rep.find("zig-zag down, cup right of strand (matrix)").unwrap().passed);
        assert!(!rep.find("zig-zag up, cup left of strand (tangle)").unwrap().passed);
        assert!(rep.find("zig-zag down, cup left of strand (matrix)").unwrap().passed);

        let bad_q = corrupted(n, |m| {
            let mut qm = m.crossing(Sing).clone();
            qm.set(1, 1, "q + 1".parse().unwrap());
            m.set_crossing(Sing, qm).unwrap();
        });
        assert!(!check_singular_relations_with(&bad_q).unwrap().all_passed());
        assert!(!check_curl_vertex_with(&bad_q).unwrap().all_passed());
        assert!(!check_moy_with(&bad_q).unwrap().all_passed());
    }

    #[test]
    fn report_text() {
        let mut r = CheckReport::new("t");
        r.check("a", true);
        r.push(CheckEntry::new("b", false).with_detail("x"));
        assert_eq!(r.to_string(), "# t\nPASS a\nFAIL b (x)\n");
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
    }
}
