//! Edelman–Greene insertion and the tableau crystal.
//!
//! Tableaux are stored bottom row first (French convention). In the affine
//! setting a letter `a` of an element of `S_x̂` is compared through its key
//! `(a − x) mod n`, which turns `S_x̂` into an ordinary symmetric group.

use std::fmt;

use crate::affine_weyl::{Partition, ResidueSet};
use crate::error::{Error, Result};
use crate::factorization::{AffineFactorization, LetterOrder};

/// A `(row, column)` position in a tableau.
type Cell = (usize, usize);

/// A (possibly skew) tableau: row `r` has `offsets[r]` empty cells on the left.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        let offsets = vec![0; rows.len()];
        Self { rows, offsets }
    }

    pub fn skew(rows: Vec<Vec<usize>>, offsets: Vec<usize>) -> Self {
        assert_eq!(rows.len(), offsets.len());
        Self { rows, offsets }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    /// Row lengths including the empty skew cells.
    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().zip(&self.offsets).map(|(r, o)| r.len() + o).collect())
    }

    /// Entry at row `r`, column `c` (both 0-based), if the cell is filled.
    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        let row = self.rows.get(r)?;
        c.checked_sub(self.offsets[r]).and_then(|k| row.get(k).copied())
    }

    fn set(&mut self, r: usize, c: usize, value: usize) {
        let k = c - self.offsets[r];
        self.rows[r][k] = value;
    }

    /// Concatenation of the rows, bottom first, each read right to left:
    /// the column reading word of the transpose.
    pub fn transpose_column_word(&self) -> Vec<usize> {
        self.rows.iter().flat_map(|row| row.iter().rev().copied()).collect()
    }

    /// Whether rows weakly increase and columns strictly increase upward.
    pub fn is_semistandard(&self) -> bool {
        self.rows.iter().all(|row| row.windows(2).all(|p| p[0] <= p[1])) && self.columns_increase()
    }

    fn columns_increase(&self) -> bool {
        (1..self.rows.len()).all(|r| {
            (self.offsets[r]..self.offsets[r] + self.rows[r].len())
                .all(|c| self.get(r - 1, c).is_none_or(|below| below < self.get(r, c).unwrap()))
        })
    }

    /// Cells in crystal reading order: columns right to left, each bottom to top.
    fn reading_cells(&self) -> Vec<Cell> {
        let width = self.shape().first();
        let mut cells = Vec::new();
        for c in (0..width).rev() {
            for r in 0..self.rows.len() {
                if self.get(r, c).is_some() {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    /// Unpaired cells holding `i` and `i + 1`, in reading order.
    fn unpaired(&self, i: usize) -> (Vec<Cell>, Vec<Cell>) {
        let mut open_i: Vec<Cell> = Vec::new();
        let mut unpaired_next = Vec::new();
        for cell in self.reading_cells() {
            match self.get(cell.0, cell.1) {
                Some(v) if v == i => open_i.push(cell),
                Some(v) if v == i + 1 && open_i.pop().is_none() => unpaired_next.push(cell),
                _ => {}
            }
        }
        (open_i, unpaired_next)
    }

    /// Changes the rightmost unpaired `i` into `i + 1`.
    pub fn f(&self, i: usize) -> Option<Self> {
        let (open_i, _) = self.unpaired(i);
        let &(r, c) = open_i.first()?;
        let mut t = self.clone();
        t.set(r, c, i + 1);
        Some(t)
    }

    /// Changes the leftmost unpaired `i + 1` into `i`.
    pub fn e(&self, i: usize) -> Option<Self> {
        let (_, unpaired_next) = self.unpaired(i);
        let &(r, c) = unpaired_next.last()?;
        let mut t = self.clone();
        t.set(r, c, i);
        Some(t)
    }

    /// `(ε_i, φ_i)`.
    pub fn string_lengths(&self, i: usize) -> (usize, usize) {
        let (open_i, unpaired_next) = self.unpaired(i);
        (unpaired_next.len(), open_i.len())
    }

    /// The Yamanouchi tableau of a shape: row `i` is filled with `i`.
    pub fn superstandard(shape: &Partition) -> Self {
        Self::new(shape.parts().iter().enumerate().map(|(r, &len)| vec![r + 1; len]).collect())
    }

    /// Parses `"1 3/2/3"` (rows bottom first, separated by slashes).
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split('/')
            .map(|row| {
                row.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(rows.into_iter().filter(|r| !r.is_empty()).collect()))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .zip(&self.offsets)
            .map(|(row, &o)| {
                let mut cells: Vec<String> = vec![".".to_string(); o];
                cells.extend(row.iter().map(|v| v.to_string()));
                cells.join(" ")
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

/// Inserts `a` into `p`, comparing letters by `order`; returns the new cell `(row, column)`.
pub fn eg_insert(p: &mut Tableau, a: usize, order: LetterOrder) -> (usize, usize) {
    let mut letter = a;
    let mut r = 0;
    loop {
        if r == p.rows.len() {
            p.rows.push(vec![letter]);
            p.offsets.push(0);
            return (r, 0);
        }
        let row = &mut p.rows[r];
        let key = order.key(letter);
        match row.iter().position(|&b| order.key(b) > key) {
            None => {
                row.push(letter);
                return (r, row.len() - 1);
            }
            Some(k) => {
                let b = row[k];
                let is_successor = order.key(b) == key + 1;
                if is_successor && row.contains(&letter) {
                    letter = b;
                } else {
                    row[k] = letter;
                    letter = b;
                }
            }
        }
        r += 1;
    }
}

/// `φ_EG`: inserts factors right to left, each in increasing order; `Q`
/// records the factor index on the cells each factor creates.
pub fn eg_map(fact: &AffineFactorization, x: usize) -> Result<(Tableau, Tableau)> {
    if x >= fact.n() || fact.content().contains(x) {
        return Err(Error::NotInSxHat(x));
    }
    let order = LetterOrder::new(fact.n(), x);
    let mut p = Tableau::default();
    let mut q = Tableau::default();
    for i in 1..=fact.num_factors() {
        let mut letters = order.decreasing(fact.factor(i));
        letters.reverse();
        for a in letters {
            let (r, c) = eg_insert(&mut p, a, order);
            if r == q.rows.len() {
                q.rows.push(Vec::new());
                q.offsets.push(0);
            }
            debug_assert_eq!(q.rows[r].len(), c);
            q.rows[r].push(i);
        }
    }
    Ok((p, q))
}

/// Undoes one insertion: removes the cell at the end of row `r` and bumps back down.
fn reverse_insert(p: &mut Tableau, r: usize, order: LetterOrder) -> usize {
    let mut letter = p.rows[r].pop().expect("cell is filled");
    if p.rows[r].is_empty() {
        p.rows.truncate(r);
        p.offsets.truncate(r);
    }
    for row_index in (0..r).rev() {
        let row = &mut p.rows[row_index];
        let key = order.key(letter);
        let pred = order.letter(key - 1);
        if key > 1 && row.contains(&letter) && row.contains(&pred) {
            letter = pred;
        } else {
            let k = row.iter().rposition(|&b| order.key(b) < key).expect("a smaller letter was bumped");
            std::mem::swap(&mut row[k], &mut letter);
        }
    }
    letter
}

/// Inverse of [`eg_map`] for a factorization with `num_factors` factors.
pub fn eg_inverse(p: &Tableau, q: &Tableau, n: usize, x: usize, num_factors: usize) -> Result<AffineFactorization> {
    if p.shape() != q.shape() {
        return Err(Error::Parse("P and Q have different shapes".into()));
    }
    let order = LetterOrder::new(n, x);
    let mut p = p.clone();
    let mut q = q.clone();
    let mut factors = vec![ResidueSet::empty(); num_factors];
    for i in (1..=num_factors).rev() {
        loop {
            // The cell holding `i` farthest right ends its row in Q.
            let cell = (0..q.rows.len()).filter(|&r| q.rows[r].last() == Some(&i)).max_by_key(|&r| q.rows[r].len());
            let Some(r) = cell else { break };
            q.rows[r].pop();
            if q.rows[r].is_empty() {
                q.rows.truncate(r);
                q.offsets.truncate(r);
            }
            let a = reverse_insert(&mut p, r, order);
            factors[num_factors - i].insert(a);
        }
    }
    if !q.is_empty() {
        return Err(Error::Parse("Q has entries beyond the factor count".into()));
    }
    AffineFactorization::new(n, factors)
}

/// The factorization attached to a skew tableau by labelling cell `(i, j)`
/// (1-based row from the bottom, column) with `j − i + ℓ(ν)`: factor `r` has
/// the labels of the cells holding `r`.
pub fn skew_tableau_factorization(t: &Tableau, n: usize, num_factors: usize) -> AffineFactorization {
    let height = t.rows.len();
    let mut factors = vec![ResidueSet::empty(); num_factors];
    for (r, row) in t.rows.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let column = t.offsets[r] + k + 1;
            let label = (column + height - (r + 1)) % n;
            factors[num_factors - v].insert(label);
        }
    }
    AffineFactorization::from_parts(n, factors)
}
