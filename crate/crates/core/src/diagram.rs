//! Sliced (Morse) diagrams of oriented tangles, links and rigid-vertex graphs.
//!
//! A diagram is a top-to-bottom stack of slices; each slice is a row of tiles
//! read left to right. Boundary levels are numbered `0..=slices.len()`, level
//! `i` sitting directly above slice `i`.
//!
//! Orientation conventions: crossings only accept two downward strands. A cup
//! creates two strands below it and a cap absorbs two strands from above.
//! `CupRight`/`CapLeft` are counterclockwise half turns and `CupLeft`/`CapRight`
//! clockwise ones, which fixes the leg directions:
//!
//! | tile        | legs          |
//! |-------------|---------------|
//! | `cup_right` | below: ↓ ↑    |
//! | `cup_left`  | below: ↑ ↓    |
//! | `cap_left`  | above: ↓ ↑    |
//! | `cap_right` | above: ↑ ↓    |
//!
//! `vert_alt` is an alternating oriented vertex; it takes `↓ ↑` or `↑ ↓` and
//! passes the same pattern below.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spintensor::{CrossingKind, TurnKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn flip(self) -> Self {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tile {
    Id,
    CupRight,
    CupLeft,
    CapRight,
    CapLeft,
    CrossPos,
    CrossNeg,
    CrossSing,
    VertAlt,
}

impl Tile {
    pub const ALL: [Tile; 9] = [
        Tile::Id,
        Tile::CupRight,
        Tile::CupLeft,
        Tile::CapRight,
        Tile::CapLeft,
        Tile::CrossPos,
        Tile::CrossNeg,
        Tile::CrossSing,
        Tile::VertAlt,
    ];

    pub fn width_in(self) -> usize {
        match self {
            Tile::Id => 1,
            Tile::CupRight | Tile::CupLeft => 0,
            _ => 2,
        }
    }

    pub fn width_out(self) -> usize {
        match self {
            Tile::Id => 1,
            Tile::CapRight | Tile::CapLeft => 0,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tile::Id => "id",
            Tile::CupRight => "cup_right",
            Tile::CupLeft => "cup_left",
            Tile::CapRight => "cap_right",
            Tile::CapLeft => "cap_left",
            Tile::CrossPos => "cross_pos",
            Tile::CrossNeg => "cross_neg",
            Tile::CrossSing => "cross_sing",
            Tile::VertAlt => "vert_alt",
        }
    }

    pub fn turn_kind(self) -> Option<TurnKind> {
        match self {
            Tile::CupRight => Some(TurnKind::CupRight),
            Tile::CupLeft => Some(TurnKind::CupLeft),
            Tile::CapRight => Some(TurnKind::CapRight),
            Tile::CapLeft => Some(TurnKind::CapLeft),
            _ => None,
        }
    }

    pub fn crossing_kind(self) -> Option<CrossingKind> {
        match self {
            Tile::CrossPos => Some(CrossingKind::Pos),
            Tile::CrossNeg => Some(CrossingKind::Neg),
            Tile::CrossSing => Some(CrossingKind::Sing),
            _ => None,
        }
    }

    pub fn from_crossing(kind: CrossingKind) -> Self {
        match kind {
            CrossingKind::Pos => Tile::CrossPos,
            CrossingKind::Neg => Tile::CrossNeg,
            CrossingKind::Sing => Tile::CrossSing,
        }
    }

    pub fn from_turn(kind: TurnKind) -> Self {
        match kind {
            TurnKind::CupRight => Tile::CupRight,
            TurnKind::CupLeft => Tile::CupLeft,
            TurnKind::CapRight => Tile::CapRight,
            TurnKind::CapLeft => Tile::CapLeft,
        }
    }

    /// Orientations of the legs below the tile, or `None` if the tile does
    /// not accept `above`.
    pub fn transfer(self, above: &[Orient]) -> Option<Vec<Orient>> {
        use Orient::{Down, Up};
        match (self, above) {
            (Tile::Id, [o]) => Some(vec![*o]),
            (Tile::CupRight, []) => Some(vec![Down, Up]),
            (Tile::CupLeft, []) => Some(vec![Up, Down]),
            (Tile::CapLeft, [Down, Up]) => Some(vec![]),
            (Tile::CapRight, [Up, Down]) => Some(vec![]),
            (Tile::CrossPos | Tile::CrossNeg | Tile::CrossSing, [Down, Down]) => Some(vec![Down, Down]),
            (Tile::VertAlt, [a, b]) if a != b => Some(vec![*a, *b]),
            _ => None,
        }
    }

    /// The cap whose legs carry `legs` (left, right).
    pub fn cap_for(legs: [Orient; 2]) -> Option<Tile> {
        match legs {
            [Orient::Down, Orient::Up] => Some(Tile::CapLeft),
            [Orient::Up, Orient::Down] => Some(Tile::CapRight),
            _ => None,
        }
    }

    /// The cup producing `legs` (left, right).
    pub fn cup_for(legs: [Orient; 2]) -> Option<Tile> {
        match legs {
            [Orient::Down, Orient::Up] => Some(Tile::CupRight),
            [Orient::Up, Orient::Down] => Some(Tile::CupLeft),
            _ => None,
        }
    }

    fn mirrored(self) -> Self {
        match self {
            Tile::CrossPos => Tile::CrossNeg,
            Tile::CrossNeg => Tile::CrossPos,
            t => t,
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Slice {
    pub tiles: Vec<Tile>,
}

impl Slice {
    pub fn new(tiles: Vec<Tile>) -> Self {
        Self { tiles }
    }

    pub fn width_in(&self) -> usize {
        self.tiles.iter().map(|t| t.width_in()).sum()
    }

    pub fn width_out(&self) -> usize {
        self.tiles.iter().map(|t| t.width_out()).sum()
    }

    /// `tile` at boundary position `pos` of a boundary `width` strands wide,
    /// all other strands passing straight through.
    pub fn padded(tile: Tile, pos: usize, width: usize) -> Self {
        assert!(pos + tile.width_in() <= width, "tile does not fit the boundary");
        let mut tiles = vec![Tile::Id; pos];
        tiles.push(tile);
        tiles.extend(std::iter::repeat_n(Tile::Id, width - pos - tile.width_in()));
        Self { tiles }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("slice {slice}: tiles consume {found} strands but the boundary above has {expected}")]
    Width {
        slice: usize,
        expected: usize,
        found: usize,
    },
    #[error("slice {slice}, tile {tile} ({kind}): cannot accept strands oriented {found:?}")]
    Orientation {
        slice: usize,
        tile: usize,
        kind: Tile,
        found: Vec<Orient>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(#[from] ValidationError),
    #[error("operation requires a closed diagram")]
    NotClosed,
    #[error("cannot stack: bottom boundary {below:?} does not match top boundary {above:?}")]
    BoundaryMismatch { below: Vec<Orient>, above: Vec<Orient> },
    #[error("splice needs a strand at level {level} of the {side} diagram")]
    NoStrand { side: &'static str, level: usize },
    #[error("splice orientations disagree: both strands point {0:?}")]
    SpliceOrientation(Orient),
    #[error("no pair of levels gives oppositely oriented splice strands")]
    NoSplice,
    #[error("level {level} out of range (diagram has {slices} slices)")]
    LevelOutOfRange { level: usize, slices: usize },
    #[error("bad diagram file: {0}")]
    Format(String),
}

/// A validated sliced diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    top: Vec<Orient>,
    bottom: Vec<Orient>,
    slices: Vec<Slice>,
}

#[derive(Serialize, Deserialize)]
struct DiagramFile {
    top: Vec<Orient>,
    slices: Vec<Slice>,
}

/// Checks widths and orientations slice by slice; returns the bottom boundary.
pub fn check_slices(top: &[Orient], slices: &[Slice]) -> Result<Vec<Orient>, ValidationError> {
    let mut cur = top.to_vec();
    for (si, slice) in slices.iter().enumerate() {
        let found = slice.width_in();
        if found != cur.len() {
            return Err(ValidationError::Width {
                slice: si,
                expected: cur.len(),
                found,
            });
        }
        let mut next = Vec::with_capacity(slice.width_out());
        let mut pos = 0;
        for (ti, tile) in slice.tiles.iter().enumerate() {
            let legs = &cur[pos..pos + tile.width_in()];
            match tile.transfer(legs) {
                Some(out) => next.extend(out),
                None => {
                    return Err(ValidationError::Orientation {
                        slice: si,
                        tile: ti,
                        kind: *tile,
                        found: legs.to_vec(),
                    })
                }
            }
            pos += tile.width_in();
        }
        cur = next;
    }
    Ok(cur)
}

impl Diagram {
    pub fn new(top: Vec<Orient>, slices: Vec<Slice>) -> Result<Self, ValidationError> {
        let bottom = check_slices(&top, &slices)?;
        Ok(Self { top, bottom, slices })
    }

    /// Straight strands with the given orientations.
    pub fn identity(orients: Vec<Orient>) -> Self {
        Self {
            bottom: orients.clone(),
            top: orients,
            slices: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::identity(Vec::new())
    }

    /// A single tile with the given legs above it.
    pub fn tile(tile: Tile, above: Vec<Orient>) -> Result<Self, ValidationError> {
        Self::new(above, vec![Slice::new(vec![tile])])
    }

    /// A crossing of two downward strands.
    pub fn crossing(kind: CrossingKind) -> Self {
        Self::tile(Tile::from_crossing(kind), vec![Orient::Down; 2]).expect("valid crossing")
    }

    pub fn cup(kind: TurnKind) -> Self {
        assert!(kind.is_cup());
        Self::tile(Tile::from_turn(kind), vec![]).expect("valid cup")
    }

    pub fn cap(kind: TurnKind) -> Self {
        assert!(!kind.is_cup());
        let legs = if kind == TurnKind::CapLeft {
            vec![Orient::Down, Orient::Up]
        } else {
            vec![Orient::Up, Orient::Down]
        };
        Self::tile(Tile::from_turn(kind), legs).expect("valid cap")
    }

    /// Alternating vertex whose left legs point `left`.
    pub fn vert_alt(left: Orient) -> Self {
        Self::tile(Tile::VertAlt, vec![left, left.flip()]).expect("valid vertex")
    }

    /// An embedded circle, counterclockwise or clockwise.
    pub fn circle(counterclockwise: bool) -> Self {
        let (cup, cap) = if counterclockwise {
            (Tile::CupRight, Tile::CapLeft)
        } else {
            (Tile::CupLeft, Tile::CapRight)
        };
        Self::new(vec![], vec![Slice::new(vec![cup]), Slice::new(vec![cap])]).expect("valid circle")
    }

    /// A crossing, rotated a quarter turn counterclockwise, so that both
    /// strands run left to right: legs `↓ ↑` above and `↑ ↓` below.
    pub fn crossing_rightward(kind: CrossingKind) -> Self {
        use Orient::{Down, Up};
        Self::new(
            vec![Down, Up],
            vec![
                Slice::new(vec![Tile::CupLeft, Tile::Id, Tile::Id]),
                Slice::new(vec![Tile::Id, Tile::from_crossing(kind), Tile::Id]),
                Slice::new(vec![Tile::Id, Tile::Id, Tile::CapLeft]),
            ],
        )
        .expect("valid rotated crossing")
    }

    /// A crossing rotated a quarter turn clockwise: both strands run right
    /// to left, legs `↑ ↓` above and `↓ ↑` below.
    pub fn crossing_leftward(kind: CrossingKind) -> Self {
        use Orient::{Down, Up};
        Self::new(
            vec![Up, Down],
            vec![
                Slice::new(vec![Tile::Id, Tile::Id, Tile::CupRight]),
                Slice::new(vec![Tile::Id, Tile::from_crossing(kind), Tile::Id]),
                Slice::new(vec![Tile::CapRight, Tile::Id, Tile::Id]),
            ],
        )
        .expect("valid rotated crossing")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| DiagramError::Format(e.to_string()))?;
        Ok(Self::new(file.top, file.slices)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramFile {
            top: self.top.clone(),
            slices: self.slices.clone(),
        })
        .expect("serializable")
    }

    pub fn top(&self) -> &[Orient] {
        &self.top
    }

    pub fn bottom(&self) -> &[Orient] {
        &self.bottom
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_closed(&self) -> bool {
        self.top.is_empty() && self.bottom.is_empty()
    }

    /// Orientations at every boundary level, top to bottom.
    pub fn levels(&self) -> Vec<Vec<Orient>> {
        let mut out = vec![self.top.clone()];
        for s in &self.slices {
            let cur = out.last().unwrap();
            let mut next = Vec::new();
            let mut pos = 0;
            for t in &s.tiles {
                next.extend(t.transfer(&cur[pos..pos + t.width_in()]).expect("validated"));
                pos += t.width_in();
            }
            out.push(next);
        }
        out
    }

    pub fn max_width(&self) -> usize {
        self.levels().iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn count_tiles(&self, pred: impl Fn(Tile) -> bool) -> usize {
        self.slices
            .iter()
            .flat_map(|s| s.tiles.iter())
            .filter(|t| pred(**t))
            .count()
    }

    /// Re-checks every invariant. Always `Ok` for values built through the
    /// public constructors.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let bottom = check_slices(&self.top, &self.slices)?;
        debug_assert_eq!(bottom, self.bottom);
        Ok(())
    }

    /// Stacks `below` under `self`.
    pub fn compose(&self, below: &Diagram) -> Result<Diagram, DiagramError> {
        if self.bottom != below.top {
            return Err(DiagramError::BoundaryMismatch {
                below: self.bottom.clone(),
                above: below.top.clone(),
            });
        }
        let mut slices = self.slices.clone();
        slices.extend(below.slices.iter().cloned());
        Ok(Diagram {
            top: self.top.clone(),
            bottom: below.bottom.clone(),
            slices,
        })
    }

    /// Places `right` beside `self`, padding the shorter one with straight
    /// strands.
    pub fn tensor(&self, right: &Diagram) -> Diagram {
        let height = self.slices.len().max(right.slices.len());
        let left = self.padded_to(height);
        let right = right.padded_to(height);
        let slices = left
            .slices
            .iter()
            .zip(&right.slices)
            .map(|(a, b)| Slice::new(a.tiles.iter().chain(&b.tiles).copied().collect()))
            .collect();
        let cat = |a: &[Orient], b: &[Orient]| a.iter().chain(b).copied().collect::<Vec<_>>();
        Diagram {
            top: cat(&left.top, &right.top),
            bottom: cat(&left.bottom, &right.bottom),
            slices,
        }
    }

    /// Tensor product with straight strands: `left` strands on the left,
    /// `right` strands on the right.
    pub fn embed(&self, left: Vec<Orient>, right: Vec<Orient>) -> Diagram {
        Diagram::identity(left).tensor(self).tensor(&Diagram::identity(right))
    }

    fn padded_to(&self, height: usize) -> Diagram {
        let mut d = self.clone();
        while d.slices.len() < height {
            d.slices.push(Slice::new(vec![Tile::Id; d.bottom.len()]));
        }
        d
    }

    /// Inserts straight-through slices above `level` until `extra` have been
    /// added. Used to line up levels of side-by-side diagrams.
    fn delayed(&self, extra: usize) -> Diagram {
        let mut d = self.clone();
        let pad = Slice::new(vec![Tile::Id; d.top.len()]);
        for _ in 0..extra {
            d.slices.insert(0, pad.clone());
        }
        d
    }
}

pub fn validate(d: &Diagram) -> Result<(), ValidationError> {
    d.validate()
}

/// `(#CrossPos) - (#CrossNeg)`.
pub fn writhe(d: &Diagram) -> i64 {
    d.count_tiles(|t| t == Tile::CrossPos) as i64 - d.count_tiles(|t| t == Tile::CrossNeg) as i64
}

/// Swaps positive and negative crossings.
pub fn mirror(d: &Diagram) -> Diagram {
    Diagram {
        top: d.top.clone(),
        bottom: d.bottom.clone(),
        slices: d
            .slices
            .iter()
            .map(|s| Slice::new(s.tiles.iter().map(|t| t.mirrored()).collect()))
            .collect(),
    }
}

pub fn disjoint_union(a: &Diagram, b: &Diagram) -> Result<Diagram, DiagramError> {
    if !a.is_closed() || !b.is_closed() {
        return Err(DiagramError::NotClosed);
    }
    Ok(a.tensor(b))
}

/// Connected sum joining the rightmost strand of `a` at boundary level
/// `level_a` to the leftmost strand of `b` at `level_b` by a pair of parallel
/// arcs (a cap-cup band between the two diagrams placed side by side).
pub fn connected_sum_at(a: &Diagram, level_a: usize, b: &Diagram, level_b: usize) -> Result<Diagram, DiagramError> {
    if !a.is_closed() || !b.is_closed() {
        return Err(DiagramError::NotClosed);
    }
    for (d, level) in [(a, level_a), (b, level_b)] {
        if level > d.slices.len() {
            return Err(DiagramError::LevelOutOfRange {
                level,
                slices: d.slices.len(),
            });
        }
    }
    let la = a.levels();
    let lb = b.levels();
    let oa = *la[level_a].last().ok_or(DiagramError::NoStrand {
        side: "left",
        level: level_a,
    })?;
    let ob = *lb[level_b].first().ok_or(DiagramError::NoStrand {
        side: "right",
        level: level_b,
    })?;
    if oa == ob {
        return Err(DiagramError::SpliceOrientation(oa));
    }
    let (a, b, level) = if level_a < level_b {
        (a.delayed(level_b - level_a), b.clone(), level_b)
    } else {
        (a.clone(), b.delayed(level_a - level_b), level_a)
    };
    let joined = a.tensor(&b);
    let width = joined.levels()[level].len();
    let pos = la[level_a].len() - 1;
    let cap = Tile::cap_for([oa, ob]).expect("opposite legs");
    let cup = Tile::cup_for([oa, ob]).expect("opposite legs");
    let mut cap_slice = vec![Tile::Id; pos];
    cap_slice.push(cap);
    cap_slice.extend(std::iter::repeat_n(Tile::Id, width - pos - 2));
    let mut cup_slice = vec![Tile::Id; pos];
    cup_slice.push(cup);
    cup_slice.extend(std::iter::repeat_n(Tile::Id, width - pos - 2));
    let mut slices = joined.slices.clone();
    slices.insert(level, Slice::new(cup_slice));
    slices.insert(level, Slice::new(cap_slice));
    Ok(Diagram::new(vec![], slices)?)
}

/// Connected sum at the first pair of levels whose splice strands point in
/// opposite directions.
pub fn connected_sum(a: &Diagram, b: &Diagram) -> Result<Diagram, DiagramError> {
    if !a.is_closed() || !b.is_closed() {
        return Err(DiagramError::NotClosed);
    }
    let la = a.levels();
    let lb = b.levels();
    for (i, left) in la.iter().enumerate() {
        let Some(oa) = left.last() else { continue };
        for (j, right) in lb.iter().enumerate() {
            if right.first().is_some_and(|ob| ob != oa) {
                return connected_sum_at(a, i, b, j);
            }
        }
    }
    Err(DiagramError::NoSplice)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub kind: CrossingKind,
    /// 1-based generator index `i` of `σ_i`, `σ_i⁻¹` or `τ_i`.
    pub index: usize,
}

impl BraidLetter {
    pub fn new(kind: CrossingKind, index: usize) -> Self {
        Self { kind, index }
    }

    /// `σ_i ↔ σ_i⁻¹`; `τ_i` is fixed.
    pub fn inverse_kind(self) -> Self {
        let kind = match self.kind {
            CrossingKind::Pos => CrossingKind::Neg,
            CrossingKind::Neg => CrossingKind::Pos,
            CrossingKind::Sing => CrossingKind::Sing,
        };
        Self {
            kind,
            index: self.index,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            CrossingKind::Pos => 's',
            CrossingKind::Neg => 'S',
            CrossingKind::Sing => 't',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A word in the singular braid monoid on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("token {position} ({token:?}) is not of the form s<i>, S<i> or t<i>")]
    BadToken { position: usize, token: String },
    #[error("token {position}: generator index {index} is out of range for {strands} strands")]
    IndexOutOfRange {
        position: usize,
        index: usize,
        strands: usize,
    },
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for (position, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::IndexOutOfRange {
                    position,
                    index: l.index,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other` (self on top).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Reversed word with `σ ↔ σ⁻¹`; the group inverse for words without `τ`.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse_kind()).collect(),
        }
    }

    /// The same word on one more strand.
    pub fn with_extra_strand(&self) -> BraidWord {
        BraidWord {
            strands: self.strands + 1,
            letters: self.letters.clone(),
        }
    }

    pub fn push(&mut self, letter: BraidLetter) -> Result<(), BraidError> {
        if letter.index == 0 || letter.index >= self.strands {
            return Err(BraidError::IndexOutOfRange {
                position: self.letters.len(),
                index: letter.index,
                strands: self.strands,
            });
        }
        self.letters.push(letter);
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated `s<i>` (σ_i), `S<i>` (σ_i⁻¹) and `t<i>` (τ_i).
pub fn parse_braid_word(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
    if strands == 0 {
        return Err(BraidError::NoStrands);
    }
    let mut letters = Vec::new();
    for (position, token) in text.split_whitespace().enumerate() {
        let bad = || BraidError::BadToken {
            position,
            token: token.to_string(),
        };
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('s') => CrossingKind::Pos,
            Some('S') => CrossingKind::Neg,
            Some('t') => CrossingKind::Sing,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 || index >= strands {
            return Err(BraidError::IndexOutOfRange {
                position,
                index,
                strands,
            });
        }
        letters.push(BraidLetter { kind, index });
    }
    Ok(BraidWord { strands, letters })
}

/// Open diagram with `k` downward strands and one slice per letter.
pub fn braid_to_diagram(w: &BraidWord) -> Diagram {
    let k = w.strands;
    let slices = w
        .letters
        .iter()
        .map(|l| Slice::padded(Tile::from_crossing(l.kind), l.index - 1, k))
        .collect();
    Diagram::new(vec![Orient::Down; k], slices).expect("braid diagrams are valid")
}

/// Right trace closure: nested counterclockwise cups above the braid, the
/// braid on the left, `k` upward return strands on the right, nested caps
/// below.
pub fn close_braid(w: &BraidWord) -> Diagram {
    let k = w.strands;
    let mut slices = Vec::new();
    for i in 0..k {
        let mut tiles = vec![Tile::Id; i];
        tiles.push(Tile::CupRight);
        tiles.extend(std::iter::repeat_n(Tile::Id, i));
        slices.push(Slice::new(tiles));
    }
    for l in &w.letters {
        let mut s = Slice::padded(Tile::from_crossing(l.kind), l.index - 1, k);
        s.tiles.extend(std::iter::repeat_n(Tile::Id, k));
        slices.push(s);
    }
    for i in (0..k).rev() {
        let mut tiles = vec![Tile::Id; i];
        tiles.push(Tile::CapLeft);
        tiles.extend(std::iter::repeat_n(Tile::Id, i));
        slices.push(Slice::new(tiles));
    }
    Diagram::new(vec![], slices).expect("closures are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use Orient::{Down, Up};

    fn word(s: &str, k: usize) -> BraidWord {
        parse_braid_word(s, k).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = word("s1 s1 s1", 2);
        assert_eq!(w.letters(), &[BraidLetter::new(CrossingKind::Pos, 1); 3]);
        let w = word("s1 S2 t1", 3);
        assert_eq!(
            w.letters(),
            &[
                BraidLetter::new(CrossingKind::Pos, 1),
                BraidLetter::new(CrossingKind::Neg, 2),
                BraidLetter::new(CrossingKind::Sing, 1)
            ]
        );
        assert_eq!(
            parse_braid_word("s3", 2),
            Err(BraidError::IndexOutOfRange {
                position: 0,
                index: 3,
                strands: 2
            })
        );
        assert!(word("", 4).is_empty());
        assert!(matches!(
            parse_braid_word("s1 x2", 3),
            Err(BraidError::BadToken { position: 1, .. })
        ));
        assert!(matches!(parse_braid_word("s", 3), Err(BraidError::BadToken { .. })));
        assert!(matches!(
            parse_braid_word("s0", 3),
            Err(BraidError::IndexOutOfRange { .. })
        ));
        assert_eq!(word("s1 S2 t1", 3).to_string(), "s1 S2 t1");
    }

    #[test]
    fn braid_diagrams() {
        let d = braid_to_diagram(&BraidWord::identity(1).unwrap());
        assert_eq!(d.top(), &[Down]);
        assert!(d.slices().is_empty());
        let d = braid_to_diagram(&word("s1", 2));
        assert_eq!(d.slices(), &[Slice::new(vec![Tile::CrossPos])]);
        let d = braid_to_diagram(&word("t1", 3));
        assert_eq!(d.slices(), &[Slice::new(vec![Tile::CrossSing, Tile::Id])]);
    }

    #[test]
    fn closures() {
        let c = close_braid(&BraidWord::identity(1).unwrap());
        assert_eq!(c, Diagram::circle(true));
        let t = close_braid(&word("s1 s1 s1", 2));
        assert!(t.is_closed());
        assert_eq!(writhe(&t), 3);
        assert_eq!(t.count_tiles(|x| x.turn_kind().is_some_and(|k| k.is_cup())), 2);
        assert_eq!(t.count_tiles(|x| x.turn_kind().is_some_and(|k| !k.is_cup())), 2);
        assert_eq!(writhe(&close_braid(&word("s1 S1", 2))), 0);
        assert_eq!(writhe(&close_braid(&word("t1", 2))), 0);
        assert_eq!(t.max_width(), 4);
    }

    #[test]
    fn mirror_examples() {
        let t = close_braid(&word("s1 s1 s1", 2));
        assert_eq!(mirror(&t), close_braid(&word("S1 S1 S1", 2)));
        assert_eq!(mirror(&mirror(&t)), t);
        let c = Diagram::circle(false);
        assert_eq!(mirror(&c), c);
        assert_eq!(writhe(&mirror(&t)), -3);
    }

    #[test]
    fn validation_reports() {
        assert!(validate(&close_braid(&word("s1 s1 s1", 2))).is_ok());
        let err = Diagram::new(vec![Down, Down], vec![Slice::new(vec![Tile::Id])]).unwrap_err();
        assert_eq!(
            err,
            ValidationError::Width {
                slice: 0,
                expected: 2,
                found: 1
            }
        );
        let err = Diagram::new(vec![Down, Up], vec![Slice::new(vec![Tile::CrossPos])]).unwrap_err();
        assert_eq!(
            err,
            ValidationError::Orientation {
                slice: 0,
                tile: 0,
                kind: Tile::CrossPos,
                found: vec![Down, Up]
            }
        );
        let err = Diagram::new(
            vec![],
            vec![Slice::new(vec![Tile::CupRight]), Slice::new(vec![Tile::CapRight])],
        )
        .unwrap_err();
        assert!(matches!(err, ValidationError::Orientation { slice: 1, tile: 0, .. }));
        let err = Diagram::new(vec![Down, Down], vec![Slice::new(vec![Tile::VertAlt])]).unwrap_err();
        assert!(matches!(
            err,
            ValidationError::Orientation {
                kind: Tile::VertAlt,
                ..
            }
        ));
    }

    #[test]
    fn rotated_crossings_have_expected_boundaries() {
        let r = Diagram::crossing_rightward(CrossingKind::Pos);
        assert_eq!((r.top(), r.bottom()), (&[Down, Up][..], &[Up, Down][..]));
        let l = Diagram::crossing_leftward(CrossingKind::Sing);
        assert_eq!((l.top(), l.bottom()), (&[Up, Down][..], &[Down, Up][..]));
    }

    #[test]
    fn compose_and_tensor() {
        let x = Diagram::crossing(CrossingKind::Pos);
        let xx = x.compose(&x).unwrap();
        assert_eq!(xx.slices().len(), 2);
        assert!(x.compose(&Diagram::identity(vec![Up, Down])).is_err());
        let c = Diagram::circle(true);
        let u = disjoint_union(&c, &c).unwrap();
        assert!(u.is_closed());
        assert_eq!(u.slices().len(), 2);
        assert_eq!(disjoint_union(&c, &x), Err(DiagramError::NotClosed));
        let t = x.tensor(&Diagram::identity(vec![Up]));
        assert_eq!(t.top(), &[Down, Down, Up]);
        assert_eq!(t.slices()[0].tiles, vec![Tile::CrossPos, Tile::Id]);
    }

    #[test]
    fn connected_sums() {
        let c = Diagram::circle(true);
        let s = connected_sum(&c, &c).unwrap();
        assert!(s.is_closed());
        assert!(validate(&s).is_ok());
        let cw = Diagram::circle(false);
        // rightmost strand of a clockwise circle and leftmost of a
        // counterclockwise one both point down at every level
        assert_eq!(connected_sum(&cw, &c), Err(DiagramError::NoSplice));
        assert_eq!(
            connected_sum_at(&cw, 1, &c, 1),
            Err(DiagramError::SpliceOrientation(Down))
        );
        assert!(matches!(
            connected_sum_at(&c, 0, &c, 1),
            Err(DiagramError::NoStrand { .. })
        ));
        assert_eq!(
            connected_sum(&c, &Diagram::crossing(CrossingKind::Pos)),
            Err(DiagramError::NotClosed)
        );
        let t = close_braid(&word("s1 s1 s1", 2));
        let tt = connected_sum_at(&t, 2, &t, 5).unwrap();
        assert_eq!(writhe(&tt), 6);
    }

    #[test]
    fn json_roundtrip() {
        let d = close_braid(&word("s1 t1 S1", 2));
        let text = d.to_json();
        assert!(text.contains("\"cross_sing\"") && text.contains("\"cup_right\""));
        assert_eq!(Diagram::from_json(&text).unwrap(), d);
        let open = braid_to_diagram(&word("s1", 2));
        assert_eq!(open.to_json(), r#"{"top":["down","down"],"slices":[["cross_pos"]]}"#);
        assert!(matches!(
            Diagram::from_json(r#"{"top":["down"],"slices":[["cross_pos"]]}"#),
            Err(DiagramError::Invalid(ValidationError::Width { .. }))
        ));
        assert!(matches!(
            Diagram::from_json(r#"{"top":["sideways"],"slices":[]}"#),
            Err(DiagramError::Format(_))
        ));
    }
}
