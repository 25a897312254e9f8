use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{self, Matrix};
use super::{from_std_coords, std_coords, AlgebraParams, Quaternion};
use crate::error::{bail, Result};
use crate::exact::{lcm_denoms, Rat};

/// A Z-order of the algebra given by a basis, with its conductors (D, D')
/// relative to the reference order I0 = O_F + O_F Omega: D' I in D I0 in I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDesc {
    basis: Vec<Quaternion>,
    conductors: (BigInt, BigInt),
    params: AlgebraParams,
    reference: bool,
}

fn i0_basis(params: AlgebraParams) -> Vec<Quaternion> {
    let f = params.field();
    let theta = if params.a().rem_euclid(4) == 1 {
        f.elem(Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into()))
    } else {
        f.sqrt()
    };
    vec![
        params.one(),
        params.quat(theta.clone(), f.zero()),
        params.big_omega(),
        params.quat(f.zero(), theta),
    ]
}

fn basis_matrix(basis: &[Quaternion]) -> Matrix {
    basis.iter().map(std_coords).collect()
}

fn all_integral(v: &[Rat]) -> bool {
    v.iter().all(|q| q.is_integer())
}

impl OrderDesc {
    pub fn i0(params: AlgebraParams) -> Self {
        OrderDesc {
            basis: i0_basis(params),
            conductors: (BigInt::one(), BigInt::one()),
            params,
            reference: true,
        }
    }

    /// Validates the order axioms and computes the conductors.
    pub fn from_basis(basis: Vec<Quaternion>) -> Result<Self> {
        if basis.len() != 4 {
            bail!(Validation, "an order basis has 4 elements, got {}", basis.len());
        }
        let params = basis[0].params();
        if basis.iter().any(|q| q.params() != params) {
            bail!(Mismatch, "basis elements from different algebras");
        }
        let m = basis_matrix(&basis);
        let Some(inv) = linalg::inverse(&m) else {
            bail!(Validation, "basis is not linearly independent over Q");
        };
        let coords = |q: &Quaternion| linalg::vec_mul(&std_coords(q), &inv);
        if !all_integral(&coords(&params.one())) {
            bail!(Validation, "1 is not in the Z-span of the basis");
        }
        for (i, x) in basis.iter().enumerate() {
            if !x.norm().is_integer() || !x.trace().is_integer() {
                bail!(Validation, "basis element {i} has non-integral norm or trace");
            }
            for (j, y) in basis.iter().enumerate() {
                if !all_integral(&coords(&(x * y))) {
                    bail!(Validation, "product of basis elements {i} and {j} leaves the lattice");
                }
            }
        }
        let conductors = conductors_of(&m, &inv, params);
        let reference = basis == i0_basis(params);
        Ok(OrderDesc { basis, conductors, params, reference })
    }

    pub fn basis(&self) -> &[Quaternion] {
        &self.basis
    }

    pub fn conductors(&self) -> (&BigInt, &BigInt) {
        (&self.conductors.0, &self.conductors.1)
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn is_i0(&self) -> bool {
        self.reference
    }

    /// Coordinates of `q` in this order's basis.
    pub fn coords(&self, q: &Quaternion) -> Vec<Rat> {
        if self.reference {
            let split = |e: &crate::exact::QuadElem| {
                if self.params.a().rem_euclid(4) == 1 {
                    [e.x() - e.y(), e.y() + e.y()]
                } else {
                    [e.x().clone(), e.y().clone()]
                }
            };
            let [c0, c1] = split(q.xi());
            let [c2, c3] = split(q.eta());
            return vec![c0, c1, c2, c3];
        }
        let inv = linalg::inverse(&basis_matrix(&self.basis)).expect("independent basis");
        linalg::vec_mul(&std_coords(q), &inv)
    }

    pub fn contains(&self, q: &Quaternion) -> bool {
        q.params() == self.params && all_integral(&self.coords(q))
    }

    /// Element with the given integer coordinates in this basis.
    pub fn element(&self, c: &[BigInt]) -> Quaternion {
        let v: Vec<Rat> = c.iter().cloned().map(Rat::from_integer).collect();
        let m = basis_matrix(&self.basis);
        from_std_coords(&linalg::vec_mul(&v, &m), self.params)
    }
}

fn conductors_of(m: &Matrix, m_inv: &Matrix, params: AlgebraParams) -> (BigInt, BigInt) {
    let b0 = basis_matrix(&i0_basis(params));
    let b0_inv = linalg::inverse(&b0).expect("I0 basis independent");
    // rows: I0 basis in coordinates of the given basis, and the converse
    let t = linalg::mul(&b0, m_inv);
    let t_inv = linalg::mul(m, &b0_inv);
    let d = lcm_denoms(t.iter().flatten());
    let scaled: Vec<Rat> = t_inv
        .iter()
        .flatten()
        .map(|q| q / Rat::from_integer(d.clone()))
        .collect();
    let d_prime = lcm_denoms(scaled.iter());
    debug_assert!(t.iter().flatten().all(|q| (q * Rat::from_integer(d.clone())).is_integer()));
    (d, d_prime)
}

pub fn order_conductors(basis: Vec<Quaternion>) -> Result<(BigInt, BigInt)> {
    let o = OrderDesc::from_basis(basis)?;
    Ok(o.conductors)
}

/// True iff the order-basis coordinates of `alpha` have gcd 1.
pub fn is_primitive(alpha: &Quaternion, order: &OrderDesc) -> Result<bool> {
    let c = order.coords(alpha);
    if alpha.params() != order.params || !all_integral(&c) {
        bail!(Domain, "{alpha} is not in the order");
    }
    let g = c.iter().fold(BigInt::zero(), |g, q| g.gcd(&q.to_integer()));
    Ok(g.is_one())
}
