//! Small dense matrices and vectors over a `Field`, acting on row vectors.

use super::field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

pub fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect()
}

/// v M for a row vector v.
pub fn vec_mat(f: &Field, v: &[Elem], m: &Matrix) -> Vec<Elem> {
    let d = v.len();
    (0..d)
        .map(|j| (0..d).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i][j]))))
        .collect()
}

pub fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().map(|row| vec_mat(f, row, b)).collect()
}

/// Elementary transvection I + c E_ij.
pub fn transvection(d: usize, i: usize, j: usize, c: Elem) -> Matrix {
    let mut m = identity(d);
    m[i][j] = c;
    m
}

pub fn diagonal(entries: &[Elem]) -> Matrix {
    let d = entries.len();
    let mut m = identity(d);
    for i in 0..d {
        m[i][i] = entries[i];
    }
    m
}

pub fn det(f: &Field, m: &Matrix) -> Elem {
    let d = m.len();
    let mut a = m.clone();
    let mut result = 1;
    for col in 0..d {
        let pivot = match (col..d).find(|&r| a[r][col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != col {
            a.swap(pivot, col);
            result = f.neg(result);
        }
        result = f.mul(result, a[col][col]);
        let inv = f.inv(a[col][col]).unwrap();
        for r in col + 1..d {
            if a[r][col] != 0 {
                let factor = f.mul(a[r][col], inv);
                for c in col..d {
                    let t = f.mul(factor, a[col][c]);
                    a[r][c] = f.sub(a[r][c], t);
                }
            }
        }
    }
    result
}

/// Integer code of a vector: sum v_i q^i.
pub fn vector_code(f: &Field, v: &[Elem]) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * f.order() as usize + c as usize)
}

pub fn vector_from_code(f: &Field, d: usize, mut c: usize) -> Vec<Elem> {
    let q = f.order() as usize;
    (0..d)
        .map(|_| {
            let x = (c % q) as Elem;
            c /= q;
            x
        })
        .collect()
}

/// Scale so the first nonzero coordinate is 1.
pub fn normalize(f: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead).unwrap();
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// GL(d,q) generators: transvections I + w^m E_ij over an additive basis, plus diag(w,1,..,1).
pub fn gl_generators(f: &Field, d: usize, special: bool) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for m in 0..f.degree() {
                    out.push(transvection(d, i, j, f.exp(m as u64)));
                }
            }
        }
    }
    if !special && f.order() > 2 {
        let mut diag = vec![1; d];
        diag[0] = f.primitive();
        out.push(diagonal(&diag));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_product() {
        let f = Field::new(5).unwrap();
        let a = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(det(&f, &a), f.from_int(-2));
        let b = mat_mul(&f, &a, &identity(2));
        assert_eq!(a, b);
        assert_eq!(det(&f, &transvection(3, 0, 2, 4)), 1);
    }

    #[test]
    fn vector_codes_round_trip() {
        let f = Field::new(9).unwrap();
        for c in 0..729 {
            assert_eq!(vector_code(&f, &vector_from_code(&f, 3, c)), c);
        }
    }
}
