use crate::error::{AlgebraError, Result};

/// Largest carrier accepted anywhere in the crate.
pub const MAX_ORDER: usize = 4096;

/// Index of an element in the carrier `{0, .., order - 1}`.
pub type ElementId = usize;

/// Dense Cayley table of a binary operation, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    order: usize,
    entries: Vec<u16>,
}

impl OpTable {
    /// Builds a table from `f(i, j)` for all pairs.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        check_order(order)?;
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let v = f(i, j);
                if v >= order {
                    return Err(AlgebraError::input(format!(
                        "table entry [{i}][{j}] = {v} out of range for order {order}"
                    )));
                }
                entries.push(v as u16);
            }
        }
        Ok(OpTable { order, entries })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(AlgebraError::input(format!(
                "table row {i} has length {}, expected {order}",
                r.len()
            )));
        }
        Self::from_fn(order, |i, j| rows[i][j])
    }

    /// Table with entries given flat in row-major order.
    pub fn from_flat(order: usize, flat: &[usize]) -> Result<Self> {
        if flat.len() != order * order {
            return Err(AlgebraError::input(format!(
                "expected {} entries, got {}",
                order * order,
                flat.len()
            )));
        }
        Self::from_fn(order, |i, j| flat[i * order + j])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: ElementId, b: ElementId) -> ElementId {
        self.entries[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn flat(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&v| v as usize)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Relabels the table: `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> OpTable {
        let n = self.order;
        let mut entries = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = perm[self.get(i, j)] as u16;
            }
        }
        OpTable { order: n, entries }
    }

    /// Restriction to `subset` (given in increasing new-index order), if closed.
    pub fn restrict(&self, subset: &[usize], op: &'static str) -> Result<OpTable> {
        let mut index = vec![usize::MAX; self.order];
        for (new, &old) in subset.iter().enumerate() {
            index[old] = new;
        }
        let m = subset.len();
        let mut entries = Vec::with_capacity(m * m);
        for &a in subset {
            for &b in subset {
                let r = self.get(a, b);
                if index[r] == usize::MAX {
                    return Err(AlgebraError::Closure {
                        op,
                        left: a,
                        right: b,
                        result: r,
                    });
                }
                entries.push(index[r] as u16);
            }
        }
        Ok(OpTable { order: m, entries })
    }
}

impl std::fmt::Debug for OpTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(AlgebraError::input("table order must be positive"));
    }
    if order > MAX_ORDER {
        return Err(AlgebraError::resource(format!(
            "order {order} exceeds the cap of {MAX_ORDER}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_entries() {
        let err = OpTable::from_rows(&[vec![0, 0], vec![0, 2]]).unwrap_err();
        assert!(matches!(err, AlgebraError::Input(_)));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(OpTable::from_rows(&[vec![0, 0], vec![0]]).is_err());
    }

    #[test]
    fn permuting_by_a_transposition_relabels_entries() {
        // x*y = max(x, y) on {0,1,2}; swapping 1 and 2 gives "min-like on the nonzero part"
        let t = OpTable::from_fn(3, |a, b| a.max(b)).unwrap();
        let p = t.permuted(&[0, 2, 1]);
        assert_eq!(p.get(2, 2), 2);
        assert_eq!(p.get(1, 2), 1);
        assert_eq!(p.get(0, 1), 1);
    }

    #[test]
    fn restriction_reports_the_escaping_pair() {
        let t = OpTable::from_fn(4, |a, b| (a + b) % 4).unwrap();
        match t.restrict(&[0, 1], "add") {
            Err(AlgebraError::Closure { left, right, result, .. }) => {
                assert_eq!((left, right, result), (1, 1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
