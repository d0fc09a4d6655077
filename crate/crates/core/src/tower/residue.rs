//! Residue field extensions `k[y] / g` flattened to a single modulus over
//! the prime field, with the embedding of `k`.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::arith::field::{inv_mod, mul_mod};
use crate::arith::{ConstField, Fe, Poly};
use crate::error::{Error, Result};

const PRIMITIVE_SEED: u64 = 0x7e51_d0e5;
const RANDOM_TRIES: usize = 64;

/// `k -> k'`, recorded by the image of the generator of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: ConstField,
    pub target: ConstField,
    z_image: Option<Fe>,
}

impl Embedding {
    pub fn identity(k: &ConstField) -> Self {
        Embedding { source: k.clone(), target: k.clone(), z_image: None }
    }

    pub fn apply(&self, a: &Fe) -> Fe {
        match (&self.source, &self.z_image) {
            (ConstField::Ext(_), Some(z)) => {
                let k = &self.target;
                let mut acc = k.zero();
                for c in self.source.coords(a).iter().rev() {
                    acc = k.add(&k.mul(&acc, z), &k.lift_prime(&Fe::P(*c)));
                }
                acc
            }
            _ => self.target.lift_prime(a),
        }
    }
}

/// The field `k[y]/g` for a monic irreducible `g` over finite `k`, the
/// embedding of `k`, and the class of `y`.
pub fn extend(k: &ConstField, g: &Poly) -> Result<(Embedding, Fe)> {
    let d = g.degree().unwrap_or(0);
    if d == 1 {
        let root = k.neg(&g.coeff(0));
        return Ok((Embedding::identity(k), root));
    }
    let p = k.characteristic();
    match k {
        ConstField::Prime(_) => {
            let m: Vec<u64> = g.coeffs().iter().map(|c| k.coords(c)[0]).collect();
            let kp = ConstField::with_modulus_unchecked(p, m);
            let y = kp.generator().expect("extension field");
            Ok((Embedding { source: k.clone(), target: kp, z_image: None }, y))
        }
        ConstField::Ext(_) => extend_ext(k, g, p, d),
        ConstField::Rational => Err(Error::Unsupported("residue extensions over Q".into())),
    }
}

fn extend_ext(k: &ConstField, g: &Poly, p: u64, d: usize) -> Result<(Embedding, Fe)> {
    let m = k.degree();
    let dim = m * d;
    let alg = Algebra { k: k.clone(), g: g.clone(), m, d };
    let z = Poly::constant(k, k.generator().expect("extension field"));
    let y = Poly::x(k);
    let mut rng = ChaCha8Rng::seed_from_u64(PRIMITIVE_SEED);
    let mut candidates: Vec<Poly> = (0..p.min(64))
        .map(|c| y.try_add(&z.scale(&k.from_i64(c as i64))).expect("same field"))
        .collect();
    for _ in 0..RANDOM_TRIES {
        let cs: Vec<Fe> = (0..d).map(|_| k.random(&mut rng)).collect();
        candidates.push(Poly::new(k.clone(), cs));
    }
    for alpha in candidates {
        let mut powers = Vec::with_capacity(dim + 1);
        let mut cur = Poly::one(k);
        for _ in 0..=dim {
            powers.push(alg.coords(&cur));
            cur = alg.mul(&cur, &alpha)?;
        }
        let cols: Vec<Vec<u64>> = powers[..dim].to_vec();
        let targets = [powers[dim].clone(), alg.coords(&z), alg.coords(&y)];
        let Some(sol) = solve(p, &cols, &targets) else { continue };
        let mut modulus: Vec<u64> = sol[0].iter().map(|c| (p - c) % p).collect();
        modulus.push(1);
        let kp = ConstField::with_modulus_unchecked(p, modulus);
        let zi = kp.from_coords(&sol[1])?;
        let yi = kp.from_coords(&sol[2])?;
        return Ok((Embedding { source: k.clone(), target: kp, z_image: Some(zi) }, yi));
    }
    Err(Error::Internal("no primitive element found for a residue extension".into()))
}

/// `k[y]/g` as a vector space over `F_p` with basis `z^i y^j`.
struct Algebra {
    k: ConstField,
    g: Poly,
    m: usize,
    d: usize,
}

impl Algebra {
    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.try_mul(b)?.rem(&self.g)
    }

    fn coords(&self, a: &Poly) -> Vec<u64> {
        let mut out = vec![0u64; self.m * self.d];
        for j in 0..self.d {
            let c = self.k.coords(&a.coeff(j));
            for (i, v) in c.iter().enumerate() {
                out[j * self.m + i] = *v;
            }
        }
        out
    }
}

/// Solves `sum x_i cols[i] = t` for each target, if `cols` is a basis.
fn solve(p: u64, cols: &[Vec<u64>], targets: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = cols.len();
    // Rows of the augmented matrix [cols | targets].
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.extend(targets.iter().map(|t| t[r]));
            row
        })
        .collect();
    let w = n + targets.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        let inv = inv_mod(a[c][c], p)?;
        for x in a[c].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for i in 0..w {
                    let s = mul_mod(f, a[c][i], p);
                    a[r][i] = (a[r][i] + p - s) % p;
                }
            }
        }
    }
    Some((0..targets.len()).map(|t| (0..n).map(|r| a[r][n + t]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor::factor;

    #[test]
    fn tower_of_residue_fields() {
        // F_7 -> F_49 via y^2 - 3, then a cubic over F_49.
        let f7 = ConstField::prime(7).unwrap();
        let g = Poly::from_i64s(&f7, &[-3, 0, 1]);
        let (emb, y) = extend(&f7, &g).unwrap();
        let k = emb.target.clone();
        assert_eq!(k.mul(&y, &y), k.from_i64(3));
        // X^3 - y is irreducible over F_49 when y is not a cube.
        let h = Poly::new(k.clone(), vec![k.neg(&y), k.zero(), k.zero(), k.one()]);
        let fac = factor(&h).unwrap();
        if fac.factors.len() == 1 {
            let (emb2, r) = extend(&k, &h).unwrap();
            let k2 = &emb2.target;
            assert_eq!(k2.degree(), 6);
            assert_eq!(k2.pow(&r, 3), emb2.apply(&y));
            let a = k.add(&y, &k.from_i64(2));
            let b = k.mul(&y, &k.from_i64(5));
            assert_eq!(emb2.apply(&k.mul(&a, &b)), k2.mul(&emb2.apply(&a), &emb2.apply(&b)));
        }
    }
}
