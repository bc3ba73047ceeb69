//! Matrix representation of the singular braid monoid by Kronecker-padded
//! crossing matrices.

use crate::diagram::{BraidLetter, BraidWord};
use crate::identities::{CheckEntry, CheckReport};
use crate::spintensor::{crossing_matrix, CrossingKind, PolyMatrix, TensorError};

/// The three generator matrices (`n² × n²`) used by [`rho_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    n: usize,
    pub pos: PolyMatrix,
    pub neg: PolyMatrix,
    pub sing: PolyMatrix,
}

impl Generators {
    pub fn standard(n: usize) -> Result<Self, TensorError> {
        Ok(Self {
            n,
            pos: crossing_matrix(CrossingKind::Pos, n)?,
            neg: crossing_matrix(CrossingKind::Neg, n)?,
            sing: crossing_matrix(CrossingKind::Sing, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, kind: CrossingKind) -> &PolyMatrix {
        match kind {
            CrossingKind::Pos => &self.pos,
            CrossingKind::Neg => &self.neg,
            CrossingKind::Sing => &self.sing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepImage {
    pub strands: usize,
    pub n: usize,
    pub matrix: PolyMatrix,
}

/// `I_{n^{i-1}} ⊗ G ⊗ I_{n^{k-i-1}}`.
pub fn padded_generator(g: &Generators, letter: BraidLetter, strands: usize) -> PolyMatrix {
    let n = g.n;
    let left = PolyMatrix::identity(n.pow(letter.index as u32 - 1));
    let right = PolyMatrix::identity(n.pow((strands - letter.index - 1) as u32));
    left.kron(g.get(letter.kind)).kron(&right)
}

pub fn rho(w: &BraidWord, n: usize) -> Result<RepImage, TensorError> {
    Ok(rho_with(w, &Generators::standard(n)?))
}

pub fn rho_with(w: &BraidWord, g: &Generators) -> RepImage {
    let k = w.strands();
    let mut m = PolyMatrix::identity(g.n.pow(k as u32));
    for &l in w.letters() {
        m = m
            .mat_mul(&padded_generator(g, l, k))
            .expect("square matrices of equal size");
    }
    RepImage {
        strands: k,
        n: g.n,
        matrix: m,
    }
}

fn letter(kind: CrossingKind, index: usize) -> BraidLetter {
    BraidLetter::new(kind, index)
}

/// Every instance of the defining relations on `k` strands, as
/// `(family, left word, right word)`.
pub fn relation_instances(k: usize) -> Vec<(&'static str, BraidWord, BraidWord)> {
    use CrossingKind::{Neg, Pos, Sing};
    let word = |ls: Vec<BraidLetter>| BraidWord::new(k, ls).expect("indices in range");
    let mut out = Vec::new();
    let kinds = [Pos, Neg, Sing];
    for i in 1..k {
        for j in 1..k {
            if i.abs_diff(j) > 1 {
                for &a in &kinds {
                    for &b in &kinds {
                        let (x, y) = (letter(a, i), letter(b, j));
                        out.push(("distant-commutation", word(vec![x, y]), word(vec![y, x])));
                    }
                }
            }
        }
    }
    for i in 1..k {
        out.push(("R2", word(vec![letter(Pos, i), letter(Neg, i)]), word(vec![])));
        out.push(("R2", word(vec![letter(Neg, i), letter(Pos, i)]), word(vec![])));
    }
    for i in 1..k.saturating_sub(1) {
        let (a, b) = (letter(Pos, i), letter(Pos, i + 1));
        out.push(("R3", word(vec![a, b, a]), word(vec![b, a, b])));
    }
    for i in 1..k {
        for j in 1..k {
            if i.abs_diff(j) == 1 {
                out.push((
                    "R4",
                    word(vec![letter(Sing, i), letter(Pos, j), letter(Pos, i)]),
                    word(vec![letter(Pos, j), letter(Pos, i), letter(Sing, j)]),
                ));
            }
        }
    }
    for i in 1..k {
        out.push((
            "R5",
            word(vec![letter(Pos, i), letter(Sing, i)]),
            word(vec![letter(Sing, i), letter(Pos, i)]),
        ));
    }
    out
}

pub fn check_monoid_relations(n: usize, k: usize) -> Result<CheckReport, TensorError> {
    Ok(check_monoid_relations_with(&Generators::standard(n)?, k))
}

pub fn check_monoid_relations_with(g: &Generators, k: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("monoid relations, n={}, k={k}", g.n));
    for (family, lhs, rhs) in relation_instances(k) {
        let l = rho_with(&lhs, g).matrix;
        let r = rho_with(&rhs, g).matrix;
        let rhs_text = if rhs.is_empty() {
            "1".to_string()
        } else {
            rhs.to_string()
        };
        report.push(CheckEntry::new(format!("{family}: {lhs} = {rhs_text}"), l == r));
    }
    report
}
