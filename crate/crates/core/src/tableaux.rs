//! Column tableaux with integer supports.
//!
//! A column of length `k` starting at support `s` holds its `j`-th box
//! (counted from the top, 1-based) at support `s + 2(k - j)`. A box with
//! content `i` at support `s` contributes `Y[i-1,s+i]^-1 Y[i,s+i-1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lweight::{expand_lroot_path, LMonomial};

/// Column lengths and support starts, left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    columns: Vec<(usize, i32)>,
}

impl Shape {
    /// Validates positive lengths, non-increasing starts, a single parity
    /// class of supports, and a connected picture (adjacent columns touch at
    /// least diagonally).
    pub fn new(columns: Vec<(usize, i32)>) -> Result<Self> {
        for (j, &(k, _)) in columns.iter().enumerate() {
            if k == 0 {
                return invalid(format!("column {} has length 0", j + 1));
            }
        }
        for (j, w) in columns.windows(2).enumerate() {
            let ((_, s1), (k2, s2)) = (w[0], w[1]);
            if s2 > s1 {
                return invalid(format!("column starts must not increase (columns {} and {})", j + 1, j + 2));
            }
            if (s1 - s2) % 2 != 0 {
                return invalid("column supports must share parity");
            }
            let top2 = s2 + 2 * (k2 as i32 - 1);
            if top2 < s1 - 2 {
                return invalid(format!("picture is disconnected between columns {} and {}", j + 1, j + 2));
            }
        }
        Ok(Shape { columns })
    }

    pub fn columns(&self) -> &[(usize, i32)] {
        &self.columns
    }

    pub fn num_boxes(&self) -> usize {
        self.columns.iter().map(|c| c.0).sum()
    }
}

/// Support of box `row` (1-based from the top) in a column of length `k` starting at `s`.
pub fn box_support(k: usize, s: i32, row: usize) -> i32 {
    s + 2 * (k as i32 - row as i32)
}

/// A filling of a [`Shape`] with contents in `1..=n+1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct Tableau {
    rank: usize,
    shape: Shape,
    cols: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    n: usize,
    shape: Vec<(usize, i32)>,
    cols: Vec<Vec<usize>>,
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = Error;
    fn try_from(t: TableauRepr) -> Result<Self> {
        Tableau::new(t.n, Shape::new(t.shape)?, t.cols)
    }
}

impl From<Tableau> for TableauRepr {
    fn from(t: Tableau) -> Self {
        TableauRepr { n: t.rank, shape: t.shape.columns, cols: t.cols }
    }
}

impl Tableau {
    pub fn new(n: usize, shape: Shape, cols: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return invalid("rank must be positive");
        }
        if cols.len() != shape.columns.len() {
            return invalid("number of columns does not match the shape");
        }
        for (j, (col, &(k, _))) in cols.iter().zip(&shape.columns).enumerate() {
            if col.len() != k {
                return invalid(format!("column {} has {} entries, shape says {}", j + 1, col.len(), k));
            }
            if let Some(&c) = col.iter().find(|&&c| c == 0 || c > n + 1) {
                return invalid(format!("content {c} outside 1..={}", n + 1));
            }
        }
        Ok(Tableau { rank: n, shape, cols })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Entries of each column, top to bottom.
    pub fn columns(&self) -> &[Vec<usize>] {
        &self.cols
    }

    /// Content of box `row` in column `col` (both 1-based).
    pub fn content(&self, col: usize, row: usize) -> Option<usize> {
        self.cols.get(col.checked_sub(1)?)?.get(row.checked_sub(1)?).copied()
    }
}

impl fmt::Display for Tableau {
    /// One text row per support value, highest support first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = &self.shape.columns;
        if cols.is_empty() {
            return writeln!(f, "(empty)");
        }
        let top = cols.iter().map(|&(k, s)| box_support(k, s, 1)).max().unwrap_or(0);
        let bottom = cols.iter().map(|&(_, s)| s).min().unwrap_or(0);
        let width = (self.rank + 1).to_string().len();
        let label = top.to_string().len().max(bottom.to_string().len());
        let mut s = top;
        while s >= bottom {
            write!(f, "{s:>label$} |")?;
            for (j, &(k, start)) in cols.iter().enumerate() {
                let off = s - start;
                let cell = if off >= 0 && off % 2 == 0 && (off / 2) < k as i32 {
                    let row = k - (off / 2) as usize;
                    self.cols[j][row - 1].to_string()
                } else {
                    String::new()
                };
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
            s -= 2;
        }
        Ok(())
    }
}

/// `Y[i-1,s+i]^-1 Y[i,s+i-1]` for content `i`, boundary nodes dropped.
pub fn monomial_of_box(n: usize, content: usize, s: i32) -> Result<LMonomial> {
    if n == 0 {
        return invalid("rank must be positive");
    }
    if content == 0 || content > n + 1 {
        return invalid(format!("content {content} outside 1..={}", n + 1));
    }
    let i = content as i32;
    Ok(LMonomial::from_terms_dropping_boundary(n, [(content - 1, s + i, -1), (content, s + i - 1, 1)]))
}

/// Product of the box monomials of every box.
pub fn monomial_of_tableau(t: &Tableau) -> LMonomial {
    let n = t.rank;
    let mut terms = Vec::with_capacity(2 * t.shape.num_boxes());
    for (col, &(k, s)) in t.cols.iter().zip(&t.shape.columns) {
        for (row0, &c) in col.iter().enumerate() {
            let sigma = box_support(k, s, row0 + 1);
            let i = c as i32;
            terms.push((c - 1, sigma + i, -1));
            terms.push((c, sigma + i - 1, 1));
        }
    }
    LMonomial::from_terms_dropping_boundary(n, terms)
}

/// Columns strictly increase, and diagonal contents weakly decrease to the right.
pub fn is_semistandard(t: &Tableau) -> bool {
    if t.cols.iter().any(|c| c.windows(2).any(|w| w[0] >= w[1])) {
        return false;
    }
    let cols = &t.shape.columns;
    for j in 0..cols.len().saturating_sub(1) {
        let (k1, s1) = cols[j];
        let (k2, s2) = cols[j + 1];
        for row in 1..=k1 {
            let target = box_support(k1, s1, row) - 2;
            let off = target - s2;
            if off < 0 || off % 2 != 0 || off / 2 >= k2 as i32 {
                continue;
            }
            let row2 = k2 - (off / 2) as usize;
            if t.cols[j][row - 1] < t.cols[j + 1][row2 - 1] {
                return false;
            }
        }
    }
    true
}

struct Cell {
    above: Option<usize>,
    diag_left: Option<usize>,
    below: usize,
}

/// Iterator over the semi-standard fillings of a shape, in depth-first order
/// (columns left to right, boxes top to bottom, contents ascending).
pub struct SemistandardIter {
    n: usize,
    shape: Shape,
    cells: Vec<Cell>,
    contents: Vec<usize>,
    started: bool,
    done: bool,
}

impl SemistandardIter {
    fn new(n: usize, shape: Shape) -> Self {
        let mut cells = Vec::with_capacity(shape.num_boxes());
        let mut offsets = Vec::with_capacity(shape.columns.len());
        for (j, &(k, s)) in shape.columns.iter().enumerate() {
            offsets.push(cells.len());
            for row in 1..=k {
                let above = (row > 1).then(|| cells.len() - 1);
                let diag_left = if j == 0 {
                    None
                } else {
                    let (kp, sp) = shape.columns[j - 1];
                    let off = box_support(k, s, row) + 2 - sp;
                    (off >= 0 && off % 2 == 0 && off / 2 < kp as i32)
                        .then(|| offsets[j - 1] + kp - (off / 2) as usize - 1)
                };
                cells.push(Cell { above, diag_left, below: k - row });
            }
        }
        let len = cells.len();
        SemistandardIter { n, shape, cells, contents: vec![0; len], started: false, done: false }
    }

    fn bounds(&self, idx: usize) -> (usize, usize) {
        let c = &self.cells[idx];
        let lo = c.above.map_or(1, |a| self.contents[a] + 1);
        let mut hi = self.n + 1 - c.below;
        if let Some(d) = c.diag_left {
            hi = hi.min(self.contents[d]);
        }
        (lo, hi)
    }

    /// Advances the odometer; `start` is the first position to revisit.
    fn search(&mut self, start: usize, mut fresh: bool) -> bool {
        let len = self.cells.len();
        let mut i = start;
        loop {
            if i == len {
                return true;
            }
            let (lo, hi) = self.bounds(i);
            if fresh {
                self.contents[i] = lo;
            } else {
                self.contents[i] += 1;
            }
            if self.contents[i] <= hi {
                i += 1;
                fresh = true;
            } else {
                if i == 0 {
                    return false;
                }
                i -= 1;
                fresh = false;
            }
        }
    }

    fn current(&self) -> Tableau {
        let mut cols = Vec::with_capacity(self.shape.columns.len());
        let mut pos = 0;
        for &(k, _) in &self.shape.columns {
            cols.push(self.contents[pos..pos + k].to_vec());
            pos += k;
        }
        Tableau { rank: self.n, shape: self.shape.clone(), cols }
    }
}

impl Iterator for SemistandardIter {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.search(0, true)
        } else if self.cells.is_empty() {
            false
        } else {
            self.search(self.cells.len() - 1, false)
        };
        if found {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

/// Every semi-standard tableau of the given shape with contents in `1..=n+1`.
pub fn enumerate_semistandard(n: usize, shape: &Shape) -> SemistandardIter {
    SemistandardIter::new(n, shape.clone())
}

/// Gaps of a strictly increasing column as `(row, size)`, with content 0 above row 1.
pub fn column_gaps(col: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut prev = 0;
    let mut out = Vec::new();
    for (j, &c) in col.iter().enumerate() {
        if c <= prev {
            return invalid("column is not strictly increasing");
        }
        if c - prev > 1 {
            out.push((j + 1, c - prev - 1));
        }
        prev = c;
    }
    Ok(out)
}

/// Replaces content `i` at `(col, row)` by `target + 1`.
///
/// Returns the new tableau and the path `A[i,target,x]` with
/// `x = s + 2(k-row) + i - 1`, so that the old monomial equals the new one
/// times the path.
pub fn raise_box(t: &Tableau, col: usize, row: usize, target: usize) -> Result<(Tableau, LMonomial)> {
    let n = t.rank;
    let i = t.content(col, row).ok_or_else(|| Error::InvalidArgument(format!("no box at column {col}, row {row}")))?;
    if i > n {
        return invalid("a box with content n+1 cannot be raised");
    }
    if target < i || target > n {
        return invalid(format!("raise target {target} outside {i}..={n}"));
    }
    let (k, s) = t.shape.columns[col - 1];
    let x = box_support(k, s, row) + i as i32 - 1;
    let path = expand_lroot_path(n, i, target, x)?;
    let mut out = t.clone();
    out.cols[col - 1][row - 1] = target + 1;
    Ok((out, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(n: usize, entries: &[usize], s: i32) -> Tableau {
        Tableau::new(n, Shape::new(vec![(entries.len(), s)]).unwrap(), vec![entries.to_vec()]).unwrap()
    }

    #[test]
    fn box_monomials() {
        assert_eq!(monomial_of_box(2, 1, 0).unwrap().to_string(), "Y[1,0]");
        assert_eq!(monomial_of_box(2, 3, 0).unwrap().to_string(), "Y[2,3]^-1");
        assert_eq!(monomial_of_box(2, 2, 0).unwrap().to_string(), "Y[1,2]^-1 Y[2,1]");
        assert!(monomial_of_box(2, 4, 0).is_err());
    }

    #[test]
    fn column_monomials() {
        for n in 1..=4 {
            for i in 1..=n {
                let entries: Vec<usize> = (1..=i).collect();
                for s in -3..=3 {
                    let m = monomial_of_tableau(&col(n, &entries, s));
                    assert_eq!(m, LMonomial::y(n, i, s + i as i32 - 1).unwrap());
                }
            }
            let full: Vec<usize> = (1..=n + 1).collect();
            assert!(monomial_of_tableau(&col(n, &full, 0)).is_identity());
        }
    }

    #[test]
    fn semistandard_predicate() {
        assert!(!is_semistandard(&col(2, &[2, 1], 0)));
        let shape = Shape::new(vec![(1, 0), (1, -2)]).unwrap();
        assert!(!is_semistandard(&Tableau::new(2, shape.clone(), vec![vec![1], vec![2]]).unwrap()));
        assert!(is_semistandard(&Tableau::new(2, shape, vec![vec![2], vec![1]]).unwrap()));
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![(1, 0), (1, 2)]).is_err());
        assert!(Shape::new(vec![(1, 0), (1, -1)]).is_err());
        assert!(Shape::new(vec![(1, 0), (1, -4)]).is_err());
        assert!(Shape::new(vec![(2, 0), (1, -2)]).is_ok());
        assert!(Shape::new(vec![]).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        let one = Shape::new(vec![(1, 0)]).unwrap();
        let all: Vec<_> = enumerate_semistandard(1, &one).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].columns(), &[vec![1]]);
        assert_eq!(all[1].columns(), &[vec![2]]);
        let kr = Shape::new(vec![(2, 1), (2, -1)]).unwrap();
        assert_eq!(enumerate_semistandard(2, &kr).count(), 6);
        let empty = Shape::new(vec![]).unwrap();
        assert_eq!(enumerate_semistandard(3, &empty).count(), 1);
    }

    #[test]
    fn enumeration_matches_filter() {
        // brute force over all fillings of a few small shapes
        let shapes =
            [vec![(2, 0), (2, -2)], vec![(2, 1), (1, -1)], vec![(3, 0), (1, 0), (1, -2)], vec![(1, 4), (3, -2)]];
        for cols in shapes {
            let shape = Shape::new(cols.clone()).unwrap();
            for n in 1..=3 {
                let got: Vec<_> = enumerate_semistandard(n, &shape).collect();
                let total: usize = cols.iter().map(|c| c.0).sum();
                let mut want = Vec::new();
                let mut digits = vec![1usize; total];
                'outer: loop {
                    let mut pos = 0;
                    let mut fill = Vec::new();
                    for &(k, _) in &cols {
                        fill.push(digits[pos..pos + k].to_vec());
                        pos += k;
                    }
                    let t = Tableau::new(n, shape.clone(), fill).unwrap();
                    if is_semistandard(&t) {
                        want.push(t);
                    }
                    for d in digits.iter_mut().rev() {
                        if *d <= n {
                            *d += 1;
                            continue 'outer;
                        }
                        *d = 1;
                    }
                    break;
                }
                assert_eq!(got, want, "shape {cols:?}, n={n}");
            }
        }
    }

    #[test]
    fn gaps() {
        assert!(column_gaps(&[1, 2, 3]).unwrap().is_empty());
        assert_eq!(column_gaps(&[1, 3]).unwrap(), vec![(2, 1)]);
        assert_eq!(column_gaps(&[2]).unwrap(), vec![(1, 1)]);
        assert!(column_gaps(&[2, 2]).is_err());
    }

    #[test]
    fn raising() {
        let t = col(1, &[1], -2);
        let (t2, path) = raise_box(&t, 1, 1, 1).unwrap();
        assert_eq!(t2.columns(), &[vec![2]]);
        assert_eq!(path, expand_lroot_path(1, 1, 1, -2).unwrap());
        assert_eq!(&monomial_of_tableau(&t2) * &path, monomial_of_tableau(&t));

        let t = col(2, &[1], 0);
        let (t2, path) = raise_box(&t, 1, 1, 2).unwrap();
        assert_eq!(t2.columns(), &[vec![3]]);
        assert_eq!(path, expand_lroot_path(2, 1, 2, 0).unwrap());
        assert!(raise_box(&col(2, &[2], 0), 1, 1, 1).is_err());
        assert!(raise_box(&col(2, &[3], 0), 1, 1, 2).is_err());
    }

    #[test]
    fn raising_is_exact() {
        let shape = Shape::new(vec![(2, 2), (2, 0), (1, 0)]).unwrap();
        for n in 1..=3 {
            for t in enumerate_semistandard(n, &shape) {
                for (c, &(k, _)) in shape.columns().iter().enumerate() {
                    for row in 1..=k {
                        let i = t.content(c + 1, row).unwrap();
                        for target in i..=n {
                            let (t2, path) = raise_box(&t, c + 1, row, target).unwrap();
                            assert_eq!(&monomial_of_tableau(&t2) * &path, monomial_of_tableau(&t));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rendering_and_json() {
        let shape = Shape::new(vec![(1, 3), (2, -1)]).unwrap();
        let t = Tableau::new(2, shape, vec![vec![1], vec![1, 2]]).unwrap();
        let text = t.to_string();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with(" 3 | 1  "));
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"n":2,"shape":[[1,3],[2,-1]],"cols":[[1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<Tableau>(&js).unwrap(), t);
    }
}
