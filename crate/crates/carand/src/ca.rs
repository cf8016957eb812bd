//! Elementary cellular automaton engine.
//!
//! An elementary CA is a ring (or zero-padded line) of binary cells updated
//! synchronously: the next value of a cell is a function of its own state and
//! its two neighbors. The 256 possible update rules are numbered by reading
//! the eight neighborhood outputs as a binary code: output for neighborhood
//! `(l, c, r)` is bit `4l + 2c + r` of the rule number.

use crate::bits::mask_low;
use serde::{Deserialize, Serialize};

/// One of the 256 elementary update rules, expanded into its 8-entry
/// neighborhood lookup table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleTable {
    number: u8,
    outputs: [u8; 8],
}

impl RuleTable {
    /// Expands a rule number: `outputs[v]` is bit `v` of `number`, where `v`
    /// is the neighborhood `(l, c, r)` read as the integer `4l + 2c + r`.
    pub fn from_number(number: u8) -> Self {
        let mut outputs = [0u8; 8];
        for (v, out) in outputs.iter_mut().enumerate() {
            *out = (number >> v) & 1;
        }
        Self { number, outputs }
    }

    pub fn number(&self) -> u8 {
        self.number
    }

    pub fn outputs(&self) -> &[u8; 8] {
        &self.outputs
    }

    /// Output for the neighborhood `(l, c, r)`; arguments must be 0 or 1.
    #[inline]
    pub fn output(&self, l: u8, c: u8, r: u8) -> u8 {
        debug_assert!(l <= 1 && c <= 1 && r <= 1);
        self.outputs[(4 * l + 2 * c + r) as usize]
    }

    /// The left-right mirror rule: the rule whose output on `(l, c, r)`
    /// equals this rule's output on `(r, c, l)`. Rule 30 mirrors to rule 86.
    pub fn mirrored(&self) -> RuleTable {
        let mut number = 0u8;
        for v in 0..8u8 {
            let (l, c, r) = (v >> 2 & 1, v >> 1 & 1, v & 1);
            let mirrored_v = 4 * r + 2 * c + l;
            number |= self.outputs[mirrored_v as usize] << v;
        }
        RuleTable::from_number(number)
    }
}

/// Neighbor lookup policy at the lattice edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Wrap around: cell 0's left neighbor is cell `w - 1`.
    Cyclic,
    /// Out-of-range neighbors read as 0.
    FixedZero,
}

/// A fixed-width row of binary cells; one time step's state.
///
/// Cells are packed 64 per word, cell `i` at bit `i % 64` of word `i / 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    words: Vec<u64>,
    width: usize,
    boundary: Boundary,
}

impl Lattice {
    /// All-zero lattice. Width must be at least 3.
    pub fn new(width: usize, boundary: Boundary) -> Self {
        assert!(width >= 3, "lattice width must be >= 3, got {width}");
        Self {
            words: vec![0; width.div_ceil(64)],
            width,
            boundary,
        }
    }

    /// Lattice from one value per cell; every element must be 0 or 1.
    pub fn from_bits(bits: &[u8], boundary: Boundary) -> Self {
        let mut lat = Self::new(bits.len(), boundary);
        for (i, &b) in bits.iter().enumerate() {
            debug_assert!(b <= 1);
            if b != 0 {
                lat.set(i, 1);
            }
        }
        lat
    }

    /// Zero row with a single 1 in the middle cell; the classic seed for
    /// rule-30 triangles.
    pub fn single_center(width: usize, boundary: Boundary) -> Self {
        let mut lat = Self::new(width, boundary);
        lat.set(width / 2, 1);
        lat
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        assert!(i < self.width);
        ((self.words[i / 64] >> (i % 64)) & 1) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u8) {
        assert!(i < self.width);
        debug_assert!(value <= 1);
        let (w, b) = (i / 64, i % 64);
        if value != 0 {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.width).map(|i| self.get(i)).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Rotation by `j` cells: cell `i` of the result is cell
    /// `(i + width - j) mod width` of the input (contents move right).
    pub fn rotated(&self, j: usize) -> Lattice {
        let j = j % self.width;
        let mut out = Lattice::new(self.width, self.boundary);
        for i in 0..self.width {
            out.set((i + j) % self.width, self.get(i));
        }
        out
    }

    /// Left-right reflection.
    pub fn reversed(&self) -> Lattice {
        let mut out = Lattice::new(self.width, self.boundary);
        for i in 0..self.width {
            out.set(self.width - 1 - i, self.get(i));
        }
        out
    }

    /// True when every cell is 0 or every cell is 1.
    pub fn is_uniform(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.width
    }

    /// Render as a '0'/'1' string, cell 0 first.
    pub fn to_binary_string(&self) -> String {
        (0..self.width)
            .map(|i| if self.get(i) == 1 { '1' } else { '0' })
            .collect()
    }

    /// Shifted copies of the cell words with the left/right neighbor of each
    /// cell aligned to the cell's own position.
    fn neighbor_words(&self) -> (Vec<u64>, Vec<u64>) {
        let nw = self.words.len();
        let w = self.width;
        let mut left = vec![0u64; nw];
        let mut right = vec![0u64; nw];
        // left[i] = cell i-1: shift everything up one bit
        let mut carry = 0u64;
        for k in 0..nw {
            left[k] = (self.words[k] << 1) | carry;
            carry = self.words[k] >> 63;
        }
        // right[i] = cell i+1: shift everything down one bit
        for k in 0..nw {
            let hi = if k + 1 < nw { self.words[k + 1] } else { 0 };
            right[k] = (self.words[k] >> 1) | (hi << 63);
        }
        if self.boundary == Boundary::Cyclic {
            // wrap: cell 0's left neighbor is cell w-1, cell w-1's right is cell 0
            let last = self.get(w - 1) as u64;
            left[0] = (left[0] & !1) | last;
            let (lw, lb) = ((w - 1) / 64, (w - 1) % 64);
            right[lw] = (right[lw] & !(1 << lb)) | ((self.words[0] & 1) << lb);
        }
        (left, right)
    }
}

/// One synchronous update of the whole lattice. The input is unchanged.
pub fn step(state: &Lattice, rule: &RuleTable) -> Lattice {
    let mut out = Lattice::new(state.width, state.boundary);
    step_into(state, rule, &mut out);
    out
}

/// In-place variant of [`step`] writing into a preallocated lattice of the
/// same width and boundary.
pub(crate) fn step_into(state: &Lattice, rule: &RuleTable, out: &mut Lattice) {
    debug_assert_eq!(state.width, out.width);
    let (left, right) = state.neighbor_words();
    let nw = state.words.len();
    for k in 0..nw {
        let (l, c, r) = (left[k], state.words[k], right[k]);
        let mut acc = 0u64;
        for v in 0..8usize {
            if rule.outputs[v] == 0 {
                continue;
            }
            let lt = if v & 4 != 0 { l } else { !l };
            let ct = if v & 2 != 0 { c } else { !c };
            let rt = if v & 1 != 0 { r } else { !r };
            acc |= lt & ct & rt;
        }
        out.words[k] = acc;
    }
    let tail = state.width % 64;
    if tail != 0 {
        out.words[nw - 1] &= mask_low(tail);
    }
}

/// Evolution history: `steps + 1` rows, row 0 the initial state, each later
/// row the synchronous update of the previous one.
pub fn evolve(initial: &Lattice, rule: &RuleTable, steps: usize) -> Vec<Lattice> {
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(initial.clone());
    for t in 0..steps {
        rows.push(step(&rows[t], rule));
    }
    rows
}

/// Wolfram's four-class behavioral taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WolframClass {
    /// Evolves to a homogeneous fixed state.
    One,
    /// Evolves to simple periodic structures.
    Two,
    /// Chaotic, pseudo-random evolution.
    Three,
    /// Complex localized structures; mixed class 2/3 behavior.
    Four,
    /// Not covered by the classification tables in this crate.
    Unclassified,
}

/// Finer taxonomy of class-3 rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subclass {
    /// Random deposition (RD).
    RandomDeposition,
    /// Directed percolation (DP).
    DirectedPercolation,
    /// Compact directed percolation (CDP).
    CompactDirectedPercolation,
    /// Domany-Kinzel CA, symmetric variant.
    DomanyKinzelSymmetric,
    /// Domany-Kinzel CA, asymmetric variant.
    DomanyKinzelAsymmetric,
}

/// The 38 rules classified as class 3 under random initial conditions.
pub const CLASS3_RULES: [u8; 38] = [
    18, 22, 30, 45, 54, 60, 73, 75, 86, 89, 90, 101, 102, 105, 106, 109, 110, 120, 122, 124, 126,
    129, 135, 137, 146, 147, 149, 150, 151, 153, 161, 165, 169, 182, 183, 193, 195, 225,
];

/// The 13 rules that show class-3/4 behavior already from a simple (single
/// cell) initial condition.
pub const SIMPLE_SEED_CHAOTIC_RULES: [u8; 13] =
    [30, 45, 75, 79, 86, 89, 101, 110, 124, 135, 137, 149, 193];

/// Classification record for one rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleMetadata {
    pub number: u8,
    pub wolfram_class: WolframClass,
    /// Subclass tags where known; rule 110 carries two.
    pub subclass: &'static [Subclass],
    /// Member of [`SIMPLE_SEED_CHAOTIC_RULES`].
    pub chaotic_from_simple_seed: bool,
}

/// Stored classification for a rule number; rules absent from the tables
/// come back unclassified.
pub fn rule_metadata(number: u8) -> RuleMetadata {
    use Subclass::*;
    let wolfram_class = if CLASS3_RULES.contains(&number) {
        WolframClass::Three
    } else {
        WolframClass::Unclassified
    };
    let subclass: &'static [Subclass] = match number {
        30 => &[RandomDeposition],
        54 => &[DomanyKinzelAsymmetric],
        73 => &[CompactDirectedPercolation],
        110 => &[DirectedPercolation, DomanyKinzelSymmetric],
        _ => &[],
    };
    RuleMetadata {
        number,
        wolfram_class,
        subclass,
        chaotic_from_simple_seed: SIMPLE_SEED_CHAOTIC_RULES.contains(&number),
    }
}
