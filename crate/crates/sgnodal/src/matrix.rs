//! Dense real symmetric matrices and their plain-text format.
//!
//! The text format starts with a line holding `n`. It is followed either by
//! `n` rows of `n` whitespace-separated reals (dense form) or by lines
//! `i j value` with 0-based indices (coordinate form, missing entries zero).
//! In coordinate form an unordered pair may appear only once. Anything from
//! `#` to the end of a line is a comment.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense symmetric matrix; `entries[i][j] == entries[j][i]` exactly as stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from full rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix> {
        Self::from_rows_tol(rows, 0.0)
    }

    /// Builds from full rows, allowing asymmetry up to `tol`; the stored
    /// matrix is the symmetric average of the two triangles.
    pub fn from_rows_tol(rows: &[Vec<f64>], tol: f64) -> Result<SymMatrix> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    got: row.len(),
                    expected: n,
                });
            }
        }
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &a) in row.iter().enumerate().skip(i) {
                let b = rows[j][i];
                let delta = (a - b).abs();
                if delta > tol {
                    return Err(Error::NotSymmetric { i, j, delta });
                }
                let v = if a == b { a } else { 0.5 * (a + b) };
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both mirrored entries.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Principal submatrix on the kept indices, in ascending order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<SymMatrix> {
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        for &v in &kept {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { v, n: self.n });
            }
        }
        let mut m = SymMatrix::zeros(kept.len());
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate().skip(a) {
                m.set(a, b, self.get(i, j));
            }
        }
        Ok(m)
    }

    /// Principal submatrix with the listed indices removed.
    pub fn delete_indices(&self, drop: &[usize]) -> Result<SymMatrix> {
        let dropped: std::collections::BTreeSet<usize> = drop.iter().copied().collect();
        let keep: Vec<usize> = (0..self.n).filter(|i| !dropped.contains(i)).collect();
        self.principal_submatrix(&keep)
    }

    pub fn scaled(&self, factor: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Conjugation `D M D` by the diagonal matrix of a ±1 vector.
    pub fn conjugate_signs(&self, signs: &[f64]) -> Result<SymMatrix> {
        if signs.len() != self.n {
            return Err(Error::SizeMismatch {
                left: signs.len(),
                right: self.n,
            });
        }
        let mut m = SymMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in i..self.n {
                m.set(i, j, signs[i] * self.get(i, j) * signs[j]);
            }
        }
        Ok(m)
    }

    pub fn rows_vec(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// FNV-1a hash of the dimensions and entry bits, as fixed-width hex.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(&(self.n as u64).to_le_bytes());
        for v in &self.data {
            eat(&v.to_bits().to_le_bytes());
        }
        format!("{h:016x}")
    }

    pub fn parse(text: &str) -> Result<SymMatrix> {
        let lines: Vec<(usize, Vec<&str>)> = significant_lines(text);
        let mut it = lines.iter();
        let (head_no, head) = it.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty input; expected matrix size".into(),
        })?;
        if head.len() != 1 {
            return Err(Error::Parse {
                line: *head_no,
                msg: format!("expected a single size token, found {}", head.len()),
            });
        }
        let n: usize = head[0].parse().map_err(|_| Error::Parse {
            line: *head_no,
            msg: format!("invalid size '{}'", head[0]),
        })?;
        if n == 0 {
            return Err(Error::Parse {
                line: *head_no,
                msg: "matrix size must be positive".into(),
            });
        }
        let body: Vec<&(usize, Vec<&str>)> = it.collect();
        let dense = body.len() == n && body.iter().all(|(_, toks)| toks.len() == n);
        if dense {
            let mut rows = Vec::with_capacity(n);
            for (line, toks) in &body {
                let mut row = Vec::with_capacity(n);
                for t in toks {
                    row.push(parse_f64(t, *line)?);
                }
                rows.push((*line, row));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let a = rows[i].1[j];
                    let b = rows[j].1[i];
                    if a != b {
                        return Err(Error::Parse {
                            line: rows[j].0,
                            msg: format!(
                                "entry ({j},{i}) = {b} does not match its mirror ({i},{j}) = {a}"
                            ),
                        });
                    }
                }
            }
            let rows: Vec<Vec<f64>> = rows.into_iter().map(|(_, r)| r).collect();
            SymMatrix::from_rows(&rows)
        } else {
            let mut m = SymMatrix::zeros(n);
            let mut seen: std::collections::HashSet<(usize, usize)> = Default::default();
            for (line, toks) in &body {
                if toks.len() != 3 {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("expected 'i j value', found {} tokens", toks.len()),
                    });
                }
                let i: usize = toks[0].parse().map_err(|_| Error::Parse {
                    line: *line,
                    msg: format!("invalid row index '{}'", toks[0]),
                })?;
                let j: usize = toks[1].parse().map_err(|_| Error::Parse {
                    line: *line,
                    msg: format!("invalid column index '{}'", toks[1]),
                })?;
                let v = parse_f64(toks[2], *line)?;
                if i >= n || j >= n {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("index ({i},{j}) out of range for size {n}"),
                    });
                }
                let key = (i.min(j), i.max(j));
                if !seen.insert(key) {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("pair ({},{}) specified more than once", key.0, key.1),
                    });
                }
                m.set(i, j, v);
            }
            Ok(m)
        }
    }

    /// Dense text form; `f64` Display is shortest-round-trip so parsing the
    /// output reproduces the matrix bit for bit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.n));
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid number '{tok}'"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            msg: format!("non-finite entry '{tok}'"),
        });
    }
    Ok(v)
}

/// Splits into (1-based line number, tokens), dropping comments and blanks.
pub(crate) fn significant_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let body = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.is_empty() {
                None
            } else {
                Some((idx + 1, toks))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_rejects_asymmetry() {
        let rows = vec![vec![1.0, 2.0], vec![2.5, 1.0]];
        match SymMatrix::from_rows(&rows) {
            Err(Error::NotSymmetric { i: 0, j: 1, delta }) => assert!((delta - 0.5).abs() < 1e-15),
            other => panic!("expected symmetry error, got {other:?}"),
        }
        let m = SymMatrix::from_rows_tol(&rows, 1.0).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn parse_dense_and_coordinate() {
        let dense = "3\n1 -1 0\n-1 2 -1\n0 -1 1\n";
        let m = SymMatrix::parse(dense).unwrap();
        assert_eq!(m.get(1, 1), 2.0);
        assert_eq!(m.get(2, 1), -1.0);

        let coord = "# path Laplacian\n3\n0 0 1\n0 1 -1\n1 1 2\n1 2 -1\n2 2 1\n";
        let c = SymMatrix::parse(coord).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn parse_rejects_non_finite_entries() {
        for bad in ["2\n1 nan\nnan 1\n", "2\n0 1 inf\n"] {
            assert!(matches!(SymMatrix::parse(bad), Err(Error::Parse { .. })));
        }
    }

    #[test]
    fn parse_rejects_duplicate_pair_and_mirror() {
        let bad = "3\n0 1 -1\n1 0 -1\n";
        match SymMatrix::parse(bad) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("expected duplicate-pair error, got {other:?}"),
        }
        let asym = "2\n1 2\n3 1\n";
        assert!(matches!(SymMatrix::parse(asym), Err(Error::Parse { .. })));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let mut m = SymMatrix::zeros(3);
        m.set(0, 1, -1.0 / 3.0);
        m.set(1, 2, 0.1 + 0.2);
        m.set(2, 2, f64::MIN_POSITIVE);
        let back = SymMatrix::parse(&m.to_text()).unwrap();
        assert_eq!(m, back);
        assert_eq!(m.digest(), back.digest());
    }

    #[test]
    fn submatrix_deletion() {
        let m = SymMatrix::parse("3\n1 -1 0\n-1 2 -1\n0 -1 1\n").unwrap();
        let s = m.delete_indices(&[1]).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.get(0, 0), 1.0);
        assert_eq!(s.get(0, 1), 0.0);
    }
}
