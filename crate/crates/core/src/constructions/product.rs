use super::{check_product_order, tuples, validated, Constructed};
use crate::error::{AlgebraError, Result};
use crate::structure::{from_elements, BinOp, FiniteStructure, Kind, ONE, ZERO};

/// Componentwise product of structures of one kind.
pub fn direct_product(factors: &[FiniteStructure]) -> Result<Constructed<Vec<usize>>> {
    let Some(first) = factors.first() else {
        return Err(AlgebraError::input("direct product of an empty list"));
    };
    let kind = first.kind();
    if let Some(f) = factors.iter().find(|f| f.kind() != kind) {
        return Err(AlgebraError::input(format!(
            "mixed kinds in product: {kind} and {}",
            f.kind()
        )));
    }
    let orders: Vec<usize> = factors.iter().map(FiniteStructure::order).collect();
    check_product_order(&orders)?;
    let elems = tuples(&orders);
    let zero = 0; // the all-zero tuple comes first
    let one = kind.has_one().then(|| {
        elems.iter().position(|t| t.iter().all(|&x| x == ONE)).expect("all-ones tuple")
    });
    let mul = |a: &Vec<usize>, b: &Vec<usize>| {
        factors.iter().zip(a.iter().zip(b)).map(|(f, (&x, &y))| f.mul(x, y)).collect()
    };
    let add = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        factors.iter().zip(a.iter().zip(b)).map(|(f, (&x, &y))| f.add(x, y)).collect()
    };
    let add_ref: Option<BinOp<'_, Vec<usize>>> =
        kind.has_add().then_some(&add as _);
    let (structure, elements) = from_elements(kind, &elems, zero, one, mul, add_ref)?;
    let labels = elements
        .iter()
        .map(|t| {
            let parts: Vec<String> =
                t.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
}

/// The semiring of `n`-by-`n` matrices over `s`; elements are row-major
/// entry vectors.
pub fn matrix_semiring(s: &FiniteStructure, n: usize) -> Result<Constructed<Vec<usize>>> {
    if s.kind() != Kind::Semiring {
        return Err(AlgebraError::input("matrix semirings need a semiring"));
    }
    if n == 0 {
        return Err(AlgebraError::input("matrix size must be positive"));
    }
    let cells = n * n;
    check_product_order(&vec![s.order(); cells])?;
    let elems = tuples(&vec![s.order(); cells]);
    let identity: Vec<usize> =
        (0..cells).map(|k| if k / n == k % n { ONE } else { ZERO }).collect();
    let one = elems.iter().position(|m| *m == identity);
    let mul = |a: &Vec<usize>, b: &Vec<usize>| {
        let mut c = vec![ZERO; cells];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = (0..n)
                    .fold(ZERO, |acc, k| s.add(acc, s.mul(a[i * n + k], b[k * n + j])));
            }
        }
        c
    };
    let add = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| s.add(x, y)).collect()
    };
    let (structure, elements) =
        from_elements(Kind::Semiring, &elems, 0, one, mul, Some(&add))?;
    let labels = elements
        .iter()
        .map(|m| {
            let rows: Vec<String> = m
                .chunks(n)
                .map(|r| r.iter().map(|&x| s.label(x)).collect::<Vec<_>>().join(" "))
                .collect();
            format!("[{}]", rows.join("; "))
        })
        .collect();
    validated(Constructed { structure: structure.with_labels(labels), elements })
}
