use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported color count: color sets are single machine words.
pub const MAX_COLORS: usize = 62;

/// A set of colors from `1..=62`, stored as a bit mask (bit `c - 1` is color
/// `c`). Ordering is the ordering of the mask read as an integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        ColorSet(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn singleton(color: u32) -> Self {
        debug_assert!((1..=MAX_COLORS as u32).contains(&color));
        ColorSet(1 << (color - 1))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            ColorSet(0)
        } else {
            ColorSet(u64::MAX >> (64 - n))
        }
    }

    /// `{lo, ..., n}`; empty when `lo > n`.
    pub fn range_from(lo: u32, n: usize) -> Self {
        if lo as usize > n || lo == 0 {
            return if lo == 0 { Self::full(n) } else { ColorSet(0) };
        }
        ColorSet(Self::full(n).0 & !Self::full(lo as usize - 1).0)
    }

    pub fn from_colors<I: IntoIterator<Item = u32>>(colors: I) -> Self {
        colors.into_iter().fold(ColorSet(0), |s, c| s.with(c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, color: u32) -> bool {
        (1..=64).contains(&color) && self.0 >> (color - 1) & 1 == 1
    }

    pub fn with(self, color: u32) -> Self {
        ColorSet(self.0 | 1 << (color - 1))
    }

    pub fn without(self, color: u32) -> Self {
        ColorSet(self.0 & !(1 << (color - 1)))
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest color in the set.
    pub fn first(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Largest color in the set.
    pub fn last(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Number of elements strictly below `color`.
    pub fn rank_below(self, color: u32) -> usize {
        (self.0 & ((1u64 << (color - 1)) - 1)).count_ones() as usize
    }

    /// Number of elements strictly above `color`.
    pub fn count_above(self, color: u32) -> usize {
        if color >= 64 {
            0
        } else {
            (self.0 >> color).count_ones() as usize
        }
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                Some(c + 1)
            }
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Compact notation used in the literature: `{6,7}` prints as `67`, colors
/// above 9 are separated by dots.
impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.last().is_some_and(|m| m > 9);
        for (k, c) in self.iter().enumerate() {
            if wide && k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for c in self.iter() {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ColorsVisitor;
        impl<'de> Visitor<'de> for ColorsVisitor {
            type Value = ColorSet;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of distinct colors in 1..={MAX_COLORS}")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ColorSet, A::Error> {
                let mut set = ColorSet::EMPTY;
                while let Some(c) = seq.next_element::<u32>()? {
                    if c == 0 || c as usize > MAX_COLORS {
                        return Err(de::Error::custom(format!("color {c} out of range")));
                    }
                    if set.contains(c) {
                        return Err(de::Error::custom(format!("color {c} repeated")));
                    }
                    set = set.with(c);
                }
                Ok(set)
            }
        }
        deserializer.deserialize_seq(ColorsVisitor)
    }
}

/// A tuple of color sets `(A_1, ..., A_p)` indexed by graph-order positions.
///
/// A `Cell` value is only a tuple; whether it is a cell of a particular
/// `Hom(G, K_n)` is decided by [`crate::complex::is_cell`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(pub Vec<ColorSet>);

impl Cell {
    pub fn new(sets: Vec<ColorSet>) -> Self {
        Cell(sets)
    }

    /// Builds a cell from explicit color lists, e.g. `&[&[1], &[6, 7]]`.
    pub fn from_lists(lists: &[&[u32]]) -> Self {
        Cell(lists.iter().map(|l| ColorSet::from_colors(l.iter().copied())).collect())
    }

    /// A vertex (proper coloring) from one color per position.
    pub fn vertex(colors: &[u32]) -> Self {
        Cell(colors.iter().map(|&c| ColorSet::singleton(c)).collect())
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.0
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    /// `sum |A_j| - p`. Only meaningful when every set is nonempty.
    pub fn dim(&self) -> usize {
        cell_dim(&self.0)
    }

    /// The coloring of a 0-dimensional cell.
    pub fn as_coloring(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|s| (s.len() == 1).then(|| s.first().unwrap())).collect()
    }

    /// Whether `other` lies in the closure of `self` (coordinatewise inclusion).
    pub fn contains_face(&self, other: &Cell) -> bool {
        self.p() == other.p() && self.0.iter().zip(&other.0).all(|(a, b)| b.is_subset(*a))
    }

    /// Replaces coordinate `pos` (0-based).
    pub fn with_set(&self, pos: usize, set: ColorSet) -> Cell {
        let mut sets = self.0.clone();
        sets[pos] = set;
        Cell(sets)
    }

    /// Signed faces `(sign, face)` in the order the boundary formula lists
    /// them: position-major, colors ascending.
    pub fn faces(&self) -> impl Iterator<Item = (i64, Cell)> + '_ {
        signed_faces(&self.0).map(move |(sign, pos, color)| (sign, self.with_set(pos, self.0[pos].without(color))))
    }

    /// `∂(A_1..A_p) = Σ (-1)^{c(x)} (A_1, .., A_{s(x)} \ {x}, .., A_p)` where
    /// `c(x)` counts the colors listed before `x` when the sets are written
    /// out one after another, and only sets with at least two colors shrink.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.dim().saturating_sub(1));
        for (sign, face) in self.faces() {
            out.add_term(face, sign);
        }
        out
    }
}

/// Dimension of a tuple of nonempty color sets.
pub fn cell_dim(sets: &[ColorSet]) -> usize {
    sets.iter().map(|s| s.len()).sum::<usize>() - sets.len()
}

/// `(sign, position, removed color)` for every face of the tuple.
pub(crate) fn signed_faces(sets: &[ColorSet]) -> impl Iterator<Item = (i64, usize, u32)> + '_ {
    let mut before = 0usize;
    sets.iter().enumerate().flat_map(move |(pos, &set)| {
        let offset = before;
        before += set.len();
        let shrinkable = set.len() >= 2;
        set.iter().enumerate().filter(move |_| shrinkable).map(move |(rank, color)| {
            let c = offset + rank;
            (if c % 2 == 0 { 1 } else { -1 }, pos, color)
        })
    })
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// A finite integer combination of cells of one dimension.
///
/// Zero coefficients are never stored, and terms iterate in canonical cell
/// order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Cell, i64>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, terms: BTreeMap::new() }
    }

    /// Collects terms, merging repeats. All cells must share one dimension.
    pub fn from_terms<I: IntoIterator<Item = (i64, Cell)>>(terms: I) -> Result<Self> {
        let mut chain: Option<Chain> = None;
        for (k, cell) in terms {
            let d = cell.dim();
            let ch = chain.get_or_insert_with(|| Chain::zero(d));
            if ch.dim != d {
                return Err(Error::MixedDimensions(ch.dim, d));
            }
            ch.add_term(cell, k);
        }
        Ok(chain.unwrap_or_default())
    }

    /// A single cell with coefficient one.
    pub fn cell(cell: Cell) -> Self {
        let mut ch = Chain::zero(cell.dim());
        ch.add_term(cell, 1);
        ch
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> {
        self.terms.keys()
    }

    /// Adds `k * cell`, dropping the term if it cancels.
    ///
    /// Panics on `i64` overflow rather than wrapping.
    pub fn add_term(&mut self, cell: Cell, k: i64) {
        if k == 0 {
            return;
        }
        if self.terms.is_empty() {
            self.dim = cell.dim();
        }
        debug_assert_eq!(cell.dim(), self.dim, "chain dimension mismatch");
        let entry = self.terms.entry(cell);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(k).expect("chain coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &Chain, k: i64) {
        for (cell, c) in other.iter() {
            self.add_term(cell.clone(), c.checked_mul(k).expect("chain coefficient overflow"));
        }
    }

    pub fn negated(&self) -> Chain {
        let mut out = Chain::zero(self.dim);
        out.add_scaled(self, -1);
        out
    }

    /// `self - other`.
    pub fn minus(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        if out.is_zero() {
            out.dim = self.dim;
        }
        out
    }

    /// Linear extension of [`Cell::boundary`]. The boundary of a 0-chain is
    /// the zero chain.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.dim.saturating_sub(1));
        for (cell, k) in self.iter() {
            for (sign, face) in cell.faces() {
                out.add_term(face, sign * k);
            }
        }
        out
    }

    /// Keeps the terms whose cell satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Cell) -> bool) -> Chain {
        Chain {
            dim: self.dim,
            terms: self.terms.iter().filter(|(c, _)| pred(c)).map(|(c, &k)| (c.clone(), k)).collect(),
        }
    }

    /// Applies a cell relabelling together with a sign per cell.
    pub fn map_cells(&self, mut f: impl FnMut(&Cell) -> (i64, Cell)) -> Chain {
        let mut out = Chain::zero(0);
        for (cell, k) in self.iter() {
            let (s, image) = f(cell);
            out.add_term(image, s * k);
        }
        if out.is_zero() {
            out.dim = self.dim;
        }
        out
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (cell, c)) in self.iter().enumerate() {
            match (k, c) {
                (0, 1) => write!(f, "{cell}")?,
                (0, -1) => write!(f, "-{cell}")?,
                (0, c) => write!(f, "{c}{cell}")?,
                (_, 1) => write!(f, "+{cell}")?,
                (_, -1) => write!(f, "-{cell}")?,
                (_, c) if c > 0 => write!(f, "+{c}{cell}")?,
                (_, c) => write!(f, "{c}{cell}")?,
            }
        }
        Ok(())
    }
}

/// One serialized chain term: `{"coeff": -1, "cell": [[1],[7]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub cell: Cell,
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self.iter().map(|(c, k)| Term { coeff: k, cell: c.clone() }).collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        if terms.iter().any(|t| t.cell.0.iter().any(|s| s.is_empty())) {
            return Err(de::Error::custom("chain cell with an empty color set"));
        }
        Chain::from_terms(terms.into_iter().map(|t| (t.coeff, t.cell))).map_err(de::Error::custom)
    }
}

/// Parses the compact literature notation, e.g. `(1,67,234,2)` or
/// `-(1,7,234,2)+(1,6,234,2)`. Only single-digit colors are supported.
pub fn parse_compact_chain(text: &str) -> Result<Chain> {
    let bad = |msg: &str| Error::InvalidCell(format!("{msg} in `{text}`"));
    let mut terms = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (sign, tail) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let tail = tail.trim_start();
        let digits_end = tail.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(tail.len());
        let mult: i64 = if digits_end == 0 { 1 } else { tail[..digits_end].parse().map_err(|_| bad("coefficient"))? };
        let tail = tail[digits_end..].trim_start();
        let tail = tail.strip_prefix('(').ok_or_else(|| bad("missing `(`"))?;
        let close = tail.find(')').ok_or_else(|| bad("missing `)`"))?;
        let sets = tail[..close]
            .split(',')
            .map(|part| {
                let part = part.trim();
                if part.is_empty() {
                    return Err(bad("empty color list"));
                }
                part.chars()
                    .map(|ch| ch.to_digit(10).filter(|&d| d > 0).ok_or_else(|| bad("bad color")))
                    .collect::<Result<Vec<u32>>>()
                    .map(ColorSet::from_colors)
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((sign * mult, Cell(sets)));
        rest = tail[close + 1..].trim_start();
    }
    Chain::from_terms(terms)
}
