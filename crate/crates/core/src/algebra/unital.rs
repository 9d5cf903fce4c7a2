//! The Hermitian unital in PG(2,q^2) and the unitary groups acting on it.
//!
//! Form: H(x,y) = x1 y3^q + x2 y2^q + x3 y1^q. Matrices act on row vectors.

use std::collections::BTreeSet;

use super::field::{Elem, Field};
use super::linear::{self, Matrix};
use super::projective::{plane_points, projective_action};
use crate::error::{Error, Result};
use crate::perm::PermGroup;

pub const MAX_UNITAL_Q: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitalFlavor {
    Psu,
    Pgu,
    PGammaU,
}

pub struct HermitianUnital {
    pub q: u64,
    pub field: Field,
    pub points: Vec<Vec<Elem>>,
}

impl HermitianUnital {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_UNITAL_Q {
            return Err(Error::UnsupportedField(q * q));
        }
        let field = Field::new(q * q)?;
        let u = HermitianUnital {
            q,
            field,
            points: Vec::new(),
        };
        let points = plane_points(&u.field)
            .into_iter()
            .filter(|v| u.form(v, v) == 0)
            .collect();
        Ok(HermitianUnital { points, ..u })
    }

    pub fn conj(&self, a: Elem) -> Elem {
        self.field.pow(a, self.q)
    }

    pub fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        let t1 = f.mul(x[0], self.conj(y[2]));
        let t2 = f.mul(x[1], self.conj(y[1]));
        let t3 = f.mul(x[2], self.conj(y[0]));
        f.add(f.add(t1, t2), t3)
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// Blocks: intersections of the unital with secant lines, as sorted index lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let f = &self.field;
        let n = self.points.len();
        let mut seen = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let block: Vec<usize> = (0..n)
                    .filter(|&k| {
                        let m: Matrix = vec![
                            self.points[i].clone(),
                            self.points[j].clone(),
                            self.points[k].clone(),
                        ];
                        linear::det(f, &m) == 0
                    })
                    .collect();
                seen.insert(block);
            }
        }
        seen.into_iter().collect()
    }

    fn unitary_generators(&self, flavor: UnitalFlavor) -> Vec<Matrix> {
        let f = &self.field;
        let mut mats = Vec::new();
        let antidiag: Matrix = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]];
        mats.push(antidiag);
        // Unipotent elements [[1,a,b],[0,1,-a^q],[0,0,1]] with b + b^q + a^{q+1} = 0.
        let trace = |b: Elem| f.add(b, self.conj(b));
        let mut avals = vec![0];
        for m in 0..f.degree() {
            avals.push(f.exp(m as u64));
        }
        for &a in &avals {
            let target = f.neg(f.mul(a, self.conj(a)));
            for b in f.elements() {
                if trace(b) == target && (a != 0 || b != 0) {
                    mats.push(vec![
                        vec![1, a, b],
                        vec![0, 1, f.neg(self.conj(a))],
                        vec![0, 0, 1],
                    ]);
                    break;
                }
            }
        }
        if flavor != UnitalFlavor::Psu {
            let w = f.primitive();
            let mu = f.pow(w, self.q - 1);
            let lam_bar_inv = f.inv(self.conj(w)).unwrap();
            mats.push(linear::diagonal(&[w, 1, lam_bar_inv]));
            mats.push(linear::diagonal(&[1, mu, 1]));
        }
        mats
    }

    pub fn group(&self, flavor: UnitalFlavor) -> Result<PermGroup> {
        let f = &self.field;
        let mut gens = Vec::new();
        for m in self.unitary_generators(flavor) {
            gens.push(projective_action(f, &self.points, |v| {
                linear::vec_mat(f, v, &m)
            })?);
        }
        if flavor == UnitalFlavor::PGammaU {
            gens.push(projective_action(f, &self.points, |v| {
                v.iter().map(|&x| f.frobenius(x)).collect()
            })?);
        }
        let name = match flavor {
            UnitalFlavor::Psu => format!("PSU(3,{})", self.q),
            UnitalFlavor::Pgu => format!("PGU(3,{})", self.q),
            UnitalFlavor::PGammaU => format!("PGammaU(3,{})", self.q),
        };
        let g = PermGroup::new(self.points.len(), gens)?.with_name(name);
        let expected = unital_group_order(self.q, flavor);
        if g.order() != num_bigint::BigUint::from(expected) {
            return Err(Error::Validation(format!(
                "{} has order {}, expected {}",
                g.display_name(),
                g.order(),
                expected
            )));
        }
        Ok(g)
    }
}

pub fn unital_group_order(q: u64, flavor: UnitalFlavor) -> u128 {
    let q = q as u128;
    let pgu = q * q * q * (q * q - 1) * (q * q * q + 1);
    let (_, e) = super::field::prime_power(q as u64).unwrap();
    match flavor {
        UnitalFlavor::Pgu => pgu,
        UnitalFlavor::Psu => pgu / if (q + 1) % 3 == 0 { 3 } else { 1 },
        UnitalFlavor::PGammaU => pgu * 2 * e as u128,
    }
}

pub fn unital_group(q: u64, flavor: UnitalFlavor) -> Result<(PermGroup, HermitianUnital)> {
    let u = HermitianUnital::new(q)?;
    let g = u.group(flavor)?;
    Ok((g, u))
}
