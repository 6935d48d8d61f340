use std::collections::BTreeSet;

use crate::algebra::{Monomial, NcPolynomial};
use crate::exact::GaussianRational;

/// Solve `sum_k x_k basis_k = target` exactly over the Gaussian rationals,
/// treating polynomials as coefficient vectors over their monomials.
/// Returns `None` when the target is outside the span. Free coordinates of
/// an underdetermined system are set to zero.
pub fn solve_linear_combination(
    basis: &[NcPolynomial],
    target: &NcPolynomial,
) -> Option<Vec<GaussianRational>> {
    let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
    for p in basis {
        monomials.extend(p.terms().map(|(m, _)| m.clone()));
    }
    monomials.extend(target.terms().map(|(m, _)| m.clone()));

    let cols = basis.len();
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let mut row: Vec<GaussianRational> = basis.iter().map(|p| p.coefficient(m)).collect();
        row.push(target.coefficient(m));
        rows.push(row);
    }

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0usize;
    for col in 0..cols {
        let Some(pivot) = (next_row..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot);
        let inv = rows[next_row][col]
            .try_inv()
            .expect("nonzero pivot inverts");
        for v in rows[next_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..=cols {
                let delta = &rows[next_row][c] * &factor;
                rows[r][c] -= &delta;
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }

    // Inconsistent rows: all coefficients eliminated but target remains.
    for row in &rows {
        if row[..cols].iter().all(GaussianRational::is_zero) && !row[cols].is_zero() {
            return None;
        }
    }

    let mut solution = vec![GaussianRational::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = rows[*r][cols].clone();
        }
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GeneratorId;

    fn gp(k: u8) -> NcPolynomial {
        NcPolynomial::from_gen(GeneratorId::p(k))
    }

    #[test]
    fn solves_a_plain_combination() {
        let basis = [gp(0), gp(1)];
        let target = &gp(0).scale_int(3) + &gp(1).scale_int(-2);
        let x = solve_linear_combination(&basis, &target).unwrap();
        assert_eq!(x[0], GaussianRational::from_int(3));
        assert_eq!(x[1], GaussianRational::from_int(-2));
    }

    #[test]
    fn rejects_out_of_span_targets() {
        let basis = [gp(0)];
        let target = gp(1);
        assert!(solve_linear_combination(&basis, &target).is_none());
    }

    #[test]
    fn handles_dependent_basis() {
        let basis = [gp(0), gp(0).scale_int(2)];
        let target = gp(0).scale_int(6);
        let x = solve_linear_combination(&basis, &target).unwrap();
        // First pivot takes the weight, the dependent column stays free.
        assert_eq!(x[0], GaussianRational::from_int(6));
        assert!(x[1].is_zero());
    }

    #[test]
    fn zero_target_gives_zero_solution() {
        let basis = [gp(0), gp(1)];
        let x = solve_linear_combination(&basis, &NcPolynomial::zero()).unwrap();
        assert!(x.iter().all(GaussianRational::is_zero));
    }
}
