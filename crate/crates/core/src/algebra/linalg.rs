use num_traits::{One, Zero};

use super::Rational;

/// Basis of the right nullspace of a dense rational matrix, one sparse
/// vector per free column of the reduced row echelon form.
///
/// `matrix` is row-major with `columns` entries per row; zero rows are fine.
pub fn nullspace(mut matrix: Vec<Vec<Rational>>, columns: usize) -> Vec<Vec<(usize, Rational)>> {
    debug_assert!(matrix.iter().all(|r| r.len() == columns));
    let rows = matrix.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..columns {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        let inv = matrix[row][col].recip();
        for x in matrix[row].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..rows {
            if r == row || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..columns {
                let delta = &factor * &matrix[row][c];
                matrix[r][c] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }

    let mut is_pivot = vec![false; columns];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..columns)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![(free, Rational::one())];
            for (r, &p) in pivots.iter().enumerate() {
                let x = &matrix[r][free];
                if !x.is_zero() {
                    v.push((p, -x.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}
