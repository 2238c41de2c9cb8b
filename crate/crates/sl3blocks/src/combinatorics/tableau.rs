use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::signature::offsets;
use super::{CombinatoricsError, Partition};

/// Which monotonicity conditions a filling must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableauKind {
    /// Rows strictly increasing, columns weakly increasing.
    Rsyt,
    /// Columns strictly increasing, rows weakly increasing.
    Csyt,
    /// Both strict; the content must be `(1^n)`.
    Syt,
    /// No monotonicity at all.
    AllFillings,
}

/// Reading word used by [`standardize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Rows left to right, top row first (for column-strict fillings).
    RowWise,
    /// Columns top to bottom, leftmost column first (for row-strict fillings).
    ColumnWise,
}

/// A filling of a Young diagram with positive integers, stored row-major with
/// 1-based entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FillingJson {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
    content: Vec<usize>,
}

impl Serialize for Filling {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        FillingJson {
            shape: self.shape.parts().to_vec(),
            rows: self.rows.clone(),
            content: self.content(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Filling {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let js = FillingJson::deserialize(de)?;
        let f = Filling::from_rows(js.rows).map_err(serde::de::Error::custom)?;
        if f.shape.parts() != js.shape.as_slice() || f.content() != js.content {
            return Err(serde::de::Error::custom("shape or content disagrees with rows"));
        }
        Ok(f)
    }
}

impl Filling {
    /// Builds a filling from its rows; the shape is read off the row lengths.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, CombinatoricsError> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        let shape = Partition::new(lens.clone()).map_err(|_| CombinatoricsError::RowsShapeMismatch(lens))?;
        if rows.iter().flatten().any(|&e| e == 0) {
            return Err(CombinatoricsError::NotTableau);
        }
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    /// Entries of column `c` from top to bottom.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows.iter().filter_map(|row| row.get(c).copied()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.shape.num_cols()).map(|c| self.column(c)).collect()
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Multiplicity of each entry `1..=max_entry`.
    pub fn content(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_entry()];
        for &e in self.rows.iter().flatten() {
            c[e - 1] += 1;
        }
        c
    }

    pub fn transpose(&self) -> Filling {
        let cols = self.columns();
        Filling {
            shape: self.shape.conjugate(),
            rows: cols,
        }
    }

    pub fn is_row_strict(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_row_weak(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn is_column_strict(&self) -> bool {
        self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_column_weak(&self) -> bool {
        self.columns().iter().all(|c| c.windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn is_kind(&self, kind: TableauKind) -> bool {
        match kind {
            TableauKind::Rsyt => self.is_row_strict() && self.is_column_weak(),
            TableauKind::Csyt => self.is_row_weak() && self.is_column_strict(),
            TableauKind::Syt => {
                self.is_row_strict() && self.is_column_strict() && self.content().iter().all(|&c| c == 1)
            }
            TableauKind::AllFillings => true,
        }
    }

    /// Sum of the (1-based) row numbers of the boxes holding `entry`.
    pub fn row_number_sum(&self, entry: usize) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| (r + 1) * row.iter().filter(|&&e| e == entry).count())
            .sum()
    }

    /// Entries in row `a` (1-based) as a set.
    pub fn row_set(&self, a: usize) -> BTreeSet<usize> {
        self.rows
            .get(a - 1)
            .map(|r| r.iter().copied().collect())
            .unwrap_or_default()
    }
}

impl std::fmt::Display for Filling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

/// All fillings of `shape` with the given multiplicity word that belong to
/// `kind`, in row-reading lexicographic order.
pub fn enumerate_tableaux(
    shape: &Partition,
    content: &[usize],
    kind: TableauKind,
) -> Result<Vec<Filling>, CombinatoricsError> {
    let total: usize = content.iter().sum();
    if total != shape.size() {
        return Err(CombinatoricsError::ShapeContentMismatch {
            shape: shape.size(),
            content: total,
        });
    }
    if kind == TableauKind::Syt && content.iter().any(|&c| c != 1) {
        return Ok(Vec::new());
    }
    let needs_dominance = matches!(kind, TableauKind::Rsyt | TableauKind::Syt);
    if needs_dominance && !shape.conjugate().dominates(&Partition::from_content(content)) {
        return Ok(Vec::new());
    }
    if kind == TableauKind::Csyt && !shape.dominates(&Partition::from_content(content)) {
        return Ok(Vec::new());
    }

    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
    let mut remaining = content.to_vec();
    let mut out = Vec::new();
    fill(0, &cells, kind, &mut rows, &mut remaining, shape, &mut out);
    Ok(out)
}

fn fill(
    idx: usize,
    cells: &[(usize, usize)],
    kind: TableauKind,
    rows: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    shape: &Partition,
    out: &mut Vec<Filling>,
) {
    if idx == cells.len() {
        out.push(Filling {
            shape: shape.clone(),
            rows: rows.clone(),
        });
        return;
    }
    let (r, c) = cells[idx];
    let left = if c > 0 { Some(rows[r][c - 1]) } else { None };
    let above = if r > 0 { Some(rows[r - 1][c]) } else { None };
    for v in 1..=remaining.len() {
        if remaining[v - 1] == 0 {
            continue;
        }
        let ok = match kind {
            TableauKind::Rsyt => left.is_none_or(|l| v > l) && above.is_none_or(|a| v >= a),
            TableauKind::Csyt => left.is_none_or(|l| v >= l) && above.is_none_or(|a| v > a),
            TableauKind::Syt => left.is_none_or(|l| v > l) && above.is_none_or(|a| v > a),
            TableauKind::AllFillings => true,
        };
        if !ok {
            continue;
        }
        rows[r][c] = v;
        remaining[v - 1] -= 1;
        fill(idx + 1, cells, kind, rows, remaining, shape, out);
        remaining[v - 1] += 1;
    }
    rows[r][c] = 0;
}

/// The number of row-strict tableaux of the given shape and content.
pub fn kostka(shape: &Partition, content: &[usize]) -> Result<usize, CombinatoricsError> {
    Ok(enumerate_tableaux(shape, content, TableauKind::Rsyt)?.len())
}

/// Relabels a filling into a standard tableau of the same shape: entry `k`
/// becomes `p_k`, and repeated labels are separated by the order in which
/// they appear in the chosen reading word.
pub fn standardize(t: &Filling, reading: Reading) -> Result<Filling, CombinatoricsError> {
    let class_ok = match reading {
        Reading::RowWise => t.is_kind(TableauKind::Csyt),
        Reading::ColumnWise => t.is_kind(TableauKind::Rsyt),
    };
    if !class_ok || t.content().contains(&0) {
        return Err(CombinatoricsError::NotTableau);
    }
    let p = offsets(&t.content());
    let mut seen = vec![0usize; t.max_entry()];
    let mut rows: Vec<Vec<usize>> = t.rows.iter().map(|r| vec![0; r.len()]).collect();
    let mut visit = |r: usize, c: usize, rows: &mut Vec<Vec<usize>>| {
        let e = t.rows[r][c];
        rows[r][c] = p[e - 1] + seen[e - 1];
        seen[e - 1] += 1;
    };
    match reading {
        Reading::RowWise => {
            for r in 0..t.rows.len() {
                for c in 0..t.rows[r].len() {
                    visit(r, c, &mut rows);
                }
            }
        }
        Reading::ColumnWise => {
            for c in 0..t.shape.num_cols() {
                for r in 0..t.rows.len() {
                    if c < t.rows[r].len() {
                        visit(r, c, &mut rows);
                    }
                }
            }
        }
    }
    Ok(Filling {
        shape: t.shape.clone(),
        rows,
    })
}

/// The set `C_a` of entries in row `a` (1-based).
pub fn row_content(t: &Filling, a: usize) -> BTreeSet<usize> {
    t.row_set(a)
}

/// `K_i` for every entry `i`: the row numbers of the boxes holding `i`,
/// listed in column-by-column (left to right, top to bottom) reading order.
pub fn row_number_tuples(t: &Filling) -> Vec<Vec<usize>> {
    let mut k = vec![Vec::new(); t.max_entry()];
    for c in 0..t.shape.num_cols() {
        for (r, row) in t.rows.iter().enumerate() {
            if let Some(&e) = row.get(c) {
                k[e - 1].push(r + 1);
            }
        }
    }
    k
}
