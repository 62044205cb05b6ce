//! Involutive isometries of a lattice: eigenlattices, the invariants
//! `(r, a, delta)` of an involution on an even unimodular lattice, the
//! induced fixed-point-set topology, and the mod-2 characteristic class.

use num::One;

use crate::error::Error;
use crate::lattice::{glue_group, Lattice, Sublattice};
use crate::linalg::{solve_mod2, Int, IntMatrix};

/// An involutive isometry of a lattice, stored as a matrix acting on column
/// vectors: the `j`-th column is the image of the `j`-th basis vector.
#[derive(Clone, Debug)]
pub struct Involution {
    lattice: Lattice,
    matrix: IntMatrix,
}

impl Involution {
    pub fn new(lattice: &Lattice, matrix: IntMatrix) -> Result<Self, Error> {
        if !matrix.is_square() || matrix.rows() != lattice.rank() {
            return Err(Error::InvalidInvolution(format!(
                "matrix is {}x{} but the lattice has rank {}",
                matrix.rows(),
                matrix.cols(),
                lattice.rank()
            )));
        }
        if !matrix.mul(&matrix).is_identity() {
            return Err(Error::InvalidInvolution(
                "matrix does not square to the identity".into(),
            ));
        }
        let g = lattice.gram();
        if &matrix.transpose().mul(g).mul(&matrix) != g {
            return Err(Error::InvalidInvolution(
                "matrix does not preserve the bilinear form".into(),
            ));
        }
        Ok(Involution {
            lattice: lattice.clone(),
            matrix,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.matrix.neg().is_identity()
    }

    pub fn negated(&self) -> Involution {
        Involution {
            lattice: self.lattice.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn commutes_with(&self, other: &Involution) -> bool {
        self.matrix.mul(&other.matrix) == other.matrix.mul(&self.matrix)
    }

    /// Product of two commuting involutions.
    pub fn compose(&self, other: &Involution) -> Result<Involution, Error> {
        if self.lattice != other.lattice {
            return Err(Error::ParentMismatch);
        }
        if !self.commutes_with(other) {
            return Err(Error::InvalidInvolution(
                "involutions do not commute".into(),
            ));
        }
        Involution::new(&self.lattice, self.matrix.mul(&other.matrix))
    }

    /// The `(+1)`-eigenlattice, a primitive sublattice.
    pub fn fixed_sublattice(&self) -> Sublattice {
        let n = self.lattice.rank();
        let m = self.matrix.add(&IntMatrix::identity(n).neg());
        Sublattice::from_columns(&self.lattice, m.kernel()).expect("kernel basis")
    }

    /// The `(-1)`-eigenlattice, a primitive sublattice.
    pub fn anti_sublattice(&self) -> Sublattice {
        let n = self.lattice.rank();
        let m = self.matrix.add(&IntMatrix::identity(n));
        Sublattice::from_columns(&self.lattice, m.kernel()).expect("kernel basis")
    }

    /// The invariants `(r, a, delta)` of an involution on an even unimodular
    /// lattice: the rank of the fixed lattice, the length of its 2-elementary
    /// discriminant group, and the parity of its discriminant form. The
    /// discriminant length is cross-checked against the glue group
    /// `L / (L^phi (+) L_phi)`.
    pub fn invariants(&self) -> Result<InvolutionInvariants, Error> {
        if !self.lattice.is_even() || !self.lattice.is_unimodular() {
            return Err(Error::InvalidLattice(
                "invariants need an even unimodular lattice".into(),
            ));
        }
        let fixed = self.fixed_sublattice();
        let anti = self.anti_sublattice();
        let r = fixed.rank();
        if r == 0 || r == self.lattice.rank() {
            let a = 0;
            return Ok(InvolutionInvariants { r, a, delta: 0 });
        }
        let disc = fixed.discriminant_form()?;
        if !disc.is_two_elementary() {
            return Err(Error::Inconsistency(
                "fixed lattice of an involution on a unimodular lattice must be 2-elementary"
                    .into(),
            ));
        }
        let a = disc.rank();
        let glue = glue_group(&fixed, &anti)?;
        let expected = Int::from(2).pow(a as u32);
        if glue.order() != &expected {
            return Err(Error::Inconsistency(format!(
                "glue group order {} does not match discriminant length {}",
                glue.order(),
                a
            )));
        }
        let mut delta = 0;
        for g in disc.gens() {
            if !disc.q(g)?.is_integer() {
                delta = 1;
            }
        }
        Ok(InvolutionInvariants { r, a, delta })
    }

    /// The class `v` in `L/2L` with `x . phi(x) = x . v (mod 2)` for every
    /// `x`; unique when the lattice is unimodular.
    pub fn characteristic_class(&self) -> Result<Vec<u8>, Error> {
        let gm = self.lattice.gram().mul(&self.matrix);
        let diag: Vec<Int> = (0..gm.rows()).map(|i| gm[(i, i)].clone()).collect();
        solve_mod2(self.lattice.gram(), &diag)
    }

    /// The matrix of the involution restricted to an invariant sublattice,
    /// written in the sublattice basis.
    pub fn restrict_to(&self, sub: &Sublattice) -> Result<IntMatrix, Error> {
        if sub.ambient() != &self.lattice {
            return Err(Error::ParentMismatch);
        }
        let image = self.matrix.mul(sub.basis());
        sub.coords_of_columns(&image)
    }
}

/// The triplet `(r, a, delta)` classifying an involution on an even
/// unimodular lattice up to its automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InvolutionInvariants {
    pub r: usize,
    pub a: usize,
    pub delta: u8,
}

impl InvolutionInvariants {
    pub fn as_tuple(&self) -> (usize, usize, u8) {
        (self.r, self.a, self.delta)
    }
}

impl std::fmt::Display for InvolutionInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r, self.a, self.delta)
    }
}

/// Topology of the fixed-point set of an antiholomorphic involution on a
/// K3 surface with invariants `(r, a, delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FixedSetTopology {
    /// No real points.
    Empty,
    /// Two disjoint genus-one surfaces.
    TwoGenusOne,
    /// One surface of the given genus plus `spheres` disjoint spheres.
    GenusPlusSpheres { genus: usize, spheres: usize },
}

impl FixedSetTopology {
    pub fn component_count(&self) -> usize {
        match self {
            FixedSetTopology::Empty => 0,
            FixedSetTopology::TwoGenusOne => 2,
            FixedSetTopology::GenusPlusSpheres { spheres, .. } => 1 + spheres,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self {
            FixedSetTopology::Empty => 0,
            FixedSetTopology::TwoGenusOne => 0,
            FixedSetTopology::GenusPlusSpheres { genus, spheres } => {
                2 - 2 * (*genus as i64) + 2 * (*spheres as i64)
            }
        }
    }
}

impl std::fmt::Display for FixedSetTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FixedSetTopology::Empty => write!(f, "empty"),
            FixedSetTopology::TwoGenusOne => write!(f, "T1 + T1"),
            FixedSetTopology::GenusPlusSpheres { genus, spheres } => {
                write!(f, "T{}", genus)?;
                if *spheres > 0 {
                    write!(f, " + {}T0", spheres)?;
                }
                Ok(())
            }
        }
    }
}

/// Fixed-point-set topology determined by the invariants of an
/// antiholomorphic involution on the K3 lattice.
pub fn fixed_set_topology(inv: &InvolutionInvariants) -> Result<FixedSetTopology, Error> {
    let (r, a, delta) = inv.as_tuple();
    if r < a {
        return Err(Error::Inconsistency(format!(
            "invalid invariants ({},{},{})",
            r, a, delta
        )));
    }
    if (r, a, delta) == (10, 10, 0) {
        return Ok(FixedSetTopology::Empty);
    }
    if (r, a, delta) == (10, 8, 0) {
        return Ok(FixedSetTopology::TwoGenusOne);
    }
    if (r + a) % 2 != 0 || r + a > 22 {
        return Err(Error::Inconsistency(format!(
            "invalid invariants ({},{},{})",
            r, a, delta
        )));
    }
    Ok(FixedSetTopology::GenusPlusSpheres {
        genus: (22 - r - a) / 2,
        spheres: (r - a) / 2,
    })
}

/// Number of connected components of the fixed-point set.
pub fn component_count(inv: &InvolutionInvariants) -> Result<usize, Error> {
    Ok(fixed_set_topology(inv)?.component_count())
}

/// The saturated joint `(+1, +1)`-eigenlattice of two commuting involutions.
pub fn joint_fixed_sublattice(a: &Involution, b: &Involution) -> Result<Sublattice, Error> {
    joint_eigenlattice(a, One::one(), b, One::one())
}

/// The saturated joint eigenlattice for the given signs (`+1` or `-1`).
pub fn joint_eigenlattice(
    a: &Involution,
    sign_a: Int,
    b: &Involution,
    sign_b: Int,
) -> Result<Sublattice, Error> {
    if a.lattice() != b.lattice() {
        return Err(Error::ParentMismatch);
    }
    let n = a.lattice().rank();
    let shift_a = a.matrix().add(&IntMatrix::identity(n).scale(&sign_a).neg());
    let shift_b = b.matrix().add(&IntMatrix::identity(n).scale(&sign_b).neg());
    let stacked = shift_a.vstack(&shift_b);
    Sublattice::from_columns(a.lattice(), stacked.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use num::Integer as _;

    fn hyperbolic_plane() -> Lattice {
        Lattice::new("U", IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap()
    }

    fn swap_on_u() -> Involution {
        let u = hyperbolic_plane();
        Involution::new(&u, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap()
    }

    #[test]
    fn rejects_non_involutions_and_non_isometries() {
        let u = hyperbolic_plane();
        // shear: not an involution
        assert!(Involution::new(&u, IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).is_err());
        // involution, but fails to preserve the form
        assert!(Involution::new(&u, IntMatrix::from_rows(&[vec![1, 0], vec![1, -1]])).is_err());
        // preserves the form up to a factor of 2 only
        assert!(Involution::new(&u, IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]])).is_err());
        // the four genuine involutive isometries of U
        for m in [
            IntMatrix::identity(2),
            IntMatrix::identity(2).neg(),
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            IntMatrix::from_rows(&[vec![0, -1], vec![-1, 0]]),
        ] {
            assert!(Involution::new(&u, m).is_ok());
        }
    }

    #[test]
    fn swap_invariants_on_hyperbolic_plane() {
        let inv = swap_on_u().invariants().unwrap();
        assert_eq!(inv.as_tuple(), (1, 1, 1));
    }

    #[test]
    fn identity_and_negation_invariants() {
        let u = hyperbolic_plane();
        let id = Involution::new(&u, IntMatrix::identity(2)).unwrap();
        assert_eq!(id.invariants().unwrap().as_tuple(), (2, 0, 0));
        assert_eq!(id.negated().invariants().unwrap().as_tuple(), (0, 0, 0));
        assert!(id.negated().is_minus_identity());
    }

    #[test]
    fn characteristic_class_of_swap() {
        let v = swap_on_u().characteristic_class().unwrap();
        assert_eq!(v, vec![1, 1]);
        // x . swap(x) for x = c1 is 0, and (1,0) . v = 0 + 1 * 0; check both
        // basis vectors directly: c1 . swap(c1) = c1 . c2 = 1 = c1 . v mod 2.
        let u = hyperbolic_plane();
        let vv: Vec<Int> = v.iter().map(|&b| int(b as i64)).collect();
        let m = swap_on_u();
        for x in [vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]] {
            let sx = m.matrix().mul_vec(&x);
            let lhs = u.pairing(&x, &sx);
            let rhs = u.pairing(&x, &vv);
            assert_eq!(lhs.mod_floor(&int(2)), rhs.mod_floor(&int(2)));
        }
    }

    #[test]
    fn restriction_to_fixed_sublattice_is_identity() {
        let s = swap_on_u();
        let fixed = s.fixed_sublattice();
        assert_eq!(fixed.rank(), 1);
        let m = s.restrict_to(&fixed).unwrap();
        assert!(m.is_identity());
        let anti = s.anti_sublattice();
        let m = s.restrict_to(&anti).unwrap();
        assert_eq!(m, IntMatrix::identity(1).neg());
    }

    #[test]
    fn joint_eigenlattices_split_the_rank() {
        let u = hyperbolic_plane();
        let l = u.direct_sum(&u);
        let m_swap_first = IntMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ]);
        let m_neg_second = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
        ]);
        let a = Involution::new(&l, m_swap_first).unwrap();
        let b = Involution::new(&l, m_neg_second).unwrap();
        assert!(a.commutes_with(&b));
        let pp = joint_eigenlattice(&a, int(1), &b, int(1)).unwrap();
        let pm = joint_eigenlattice(&a, int(1), &b, int(-1)).unwrap();
        let mp = joint_eigenlattice(&a, int(-1), &b, int(1)).unwrap();
        let mm = joint_eigenlattice(&a, int(-1), &b, int(-1)).unwrap();
        assert_eq!(pp.rank() + pm.rank() + mp.rank() + mm.rank(), 4);
        assert_eq!(pp.rank(), 1);
        assert_eq!(pm.rank(), 2);
        assert_eq!(mp.rank(), 1);
        assert_eq!(mm.rank(), 0);
    }

    #[test]
    fn topology_table() {
        let t = |r, a, delta| {
            fixed_set_topology(&InvolutionInvariants { r, a, delta }).unwrap()
        };
        assert_eq!(t(10, 10, 0), FixedSetTopology::Empty);
        assert_eq!(t(10, 8, 0), FixedSetTopology::TwoGenusOne);
        assert_eq!(
            t(1, 1, 1),
            FixedSetTopology::GenusPlusSpheres {
                genus: 10,
                spheres: 0
            }
        );
        assert_eq!(
            t(16, 0, 0),
            FixedSetTopology::GenusPlusSpheres {
                genus: 3,
                spheres: 8
            }
        );
        assert_eq!(t(10, 10, 0).component_count(), 0);
        assert_eq!(t(10, 8, 0).component_count(), 2);
        assert_eq!(t(16, 0, 0).component_count(), 9);
        assert_eq!(t(10, 8, 0).euler_characteristic(), 0);
        assert_eq!(t(16, 0, 0).euler_characteristic(), 12);
    }
}
