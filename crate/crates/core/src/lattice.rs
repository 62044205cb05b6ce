//! Integral lattices presented by Gram matrices, their sublattices, and the
//! glue groups of finite-index orthogonal decompositions.
//!
//! A [`Lattice`] is an abstract free Z-module with a symmetric bilinear form;
//! a [`Sublattice`] lives inside an ambient lattice with basis vectors stored
//! as matrix columns in ambient coordinates. For a finite-index orthogonal
//! pair `S1 + S2` inside `L`, [`glue_group`] computes
//! `L / (S1 (+) S2)` embedded into `A_S1 (+) A_S2`.

use num::{Integer as _, One, Signed, Zero};

use crate::disc::{mod1, DiscriminantGroup};
use crate::error::Error;
use crate::linalg::{Int, IntMatrix, Rat};

/// An integral lattice: a name and a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(name: impl Into<String>, gram: IntMatrix) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Lattice {
            name: name.into(),
            gram,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> Int {
        self.gram.det().expect("square by construction")
    }

    pub fn is_even(&self) -> bool {
        let two = Int::from(2);
        (0..self.rank()).all(|i| self.gram[(i, i)].mod_floor(&two).is_zero())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn signature(&self) -> Result<(usize, usize, usize), Error> {
        crate::linalg::signature(&self.gram)
    }

    /// Signature convention for fixed lattices of antiholomorphic-type
    /// involutions: exactly one positive square.
    pub fn is_hyperbolic(&self) -> Result<bool, Error> {
        let (pos, neg, zero) = self.signature()?;
        Ok(pos == 1 && zero == 0 && neg == self.rank() - 1)
    }

    pub fn is_negative_definite(&self) -> Result<bool, Error> {
        let (pos, _, zero) = self.signature()?;
        Ok(pos == 0 && zero == 0)
    }

    /// Same module, form multiplied by `k`.
    pub fn rescale(&self, k: i64) -> Lattice {
        Lattice {
            name: format!("{}({})", self.name, k),
            gram: self.gram.scale(&Int::from(k)),
        }
    }

    /// Form divided by two; fails unless every Gram entry is even.
    pub fn half(&self) -> Result<Lattice, Error> {
        let two = Int::from(2);
        let mut gram = self.gram.clone();
        for i in 0..gram.rows() {
            for j in 0..gram.cols() {
                if !gram[(i, j)].mod_floor(&two).is_zero() {
                    return Err(Error::InvalidLattice(format!(
                        "{}: form is not divisible by 2",
                        self.name
                    )));
                }
                gram[(i, j)] = &self.gram[(i, j)] / &two;
            }
        }
        Ok(Lattice {
            name: format!("{}(1/2)", self.name),
            gram,
        })
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice {
            name: format!("{}+{}", self.name, other.name),
            gram: IntMatrix::block_diag(&[&self.gram, &other.gram]),
        }
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantGroup, Error> {
        DiscriminantGroup::new(&self.gram)
    }

    /// The whole lattice viewed as a sublattice of itself.
    pub fn full_sublattice(&self) -> Sublattice {
        Sublattice {
            ambient: self.clone(),
            basis: IntMatrix::identity(self.rank()),
            gram: self.gram.clone(),
        }
    }

    pub fn pairing(&self, x: &[Int], y: &[Int]) -> Int {
        assert_eq!(x.len(), self.rank());
        assert_eq!(y.len(), self.rank());
        let mut acc = Int::zero();
        for i in 0..self.rank() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                acc += &x[i] * &self.gram[(i, j)] * &y[j];
            }
        }
        acc
    }
}

/// A sublattice of an ambient lattice. Basis vectors are the columns of
/// `basis`, written in ambient coordinates; `gram` is the induced form.
#[derive(Clone, Debug)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMatrix,
    gram: IntMatrix,
}

impl Sublattice {
    /// Builds a sublattice from linearly independent column vectors.
    pub fn from_columns(ambient: &Lattice, basis: IntMatrix) -> Result<Self, Error> {
        if basis.rows() != ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vectors live in rank {} but ambient has rank {}",
                basis.rows(),
                ambient.rank()
            )));
        }
        if basis.cols() > 0 && basis.snf().rank() != basis.cols() {
            return Err(Error::DependentVectors);
        }
        let gram = basis.transpose().mul(ambient.gram()).mul(&basis);
        Ok(Sublattice {
            ambient: ambient.clone(),
            basis,
            gram,
        })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// The sublattice as an abstract lattice with the induced form.
    pub fn as_lattice(&self, name: impl Into<String>) -> Lattice {
        Lattice {
            name: name.into(),
            gram: self.gram.clone(),
        }
    }

    /// A sublattice is primitive when the ambient quotient is torsion-free.
    pub fn is_primitive(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        let sat = self.basis.saturate_columns();
        self.basis.transpose().row_hnf() == sat.transpose().row_hnf()
    }

    /// Replaces the basis by a basis of the saturation.
    pub fn saturate(&self) -> Sublattice {
        let sat = self.basis.saturate_columns();
        Sublattice::from_columns(&self.ambient, sat).expect("saturation keeps independence")
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantGroup, Error> {
        DiscriminantGroup::new(&self.gram)
    }

    /// Orthogonal complement inside the ambient lattice; always primitive.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let pairing_rows = self.basis.transpose().mul(self.ambient.gram());
        let kernel = pairing_rows.kernel();
        Sublattice::from_columns(&self.ambient, kernel).expect("kernel basis is independent")
    }

    /// Writes ambient-coordinate columns in this sublattice's basis; errors
    /// with [`Error::NotASublattice`] when a column is not an integral
    /// combination of the basis.
    pub fn coords_of_columns(&self, cols: &IntMatrix) -> Result<IntMatrix, Error> {
        let b = self.basis.to_rational();
        let mut out = IntMatrix::zero(self.rank(), cols.cols());
        for j in 0..cols.cols() {
            let target: Vec<Rat> = cols.column(j).into_iter().map(Rat::from).collect();
            let x = b.solve(&target).ok_or(Error::NotASublattice)?;
            // A solution to an exactly determined full-column-rank system is
            // unique; verify and demand integrality.
            let check = b.mul_vec(&x);
            if check != target {
                return Err(Error::NotASublattice);
            }
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_integer() {
                    return Err(Error::NotASublattice);
                }
                out[(i, j)] = xi.to_integer();
            }
        }
        Ok(out)
    }

    /// Orthogonal projection of an ambient vector onto `self (x) Q`, written
    /// in this sublattice's basis. For `v` pairing integrally with the
    /// sublattice this is an element of the dual lattice.
    pub fn project_dual(&self, v: &[Int]) -> Vec<Rat> {
        let gram_inv = self
            .gram
            .to_rational()
            .inverse()
            .expect("nondegenerate sublattice form");
        let btg = self.basis.transpose().mul(self.ambient.gram());
        let w = btg.mul_vec(v);
        let wr: Vec<Rat> = w.into_iter().map(Rat::from).collect();
        gram_inv.mul_vec(&wr)
    }
}

/// The glue group `Gamma = L / (S1 (+) S2)` of a finite-index orthogonal
/// decomposition, embedded in `A_S1 (+) A_S2` via the dual projections.
#[derive(Clone, Debug)]
pub struct GlueGroup {
    order: Int,
    divisors: Vec<Int>,
    gens: Vec<(Vec<Rat>, Vec<Rat>)>,
    a1: DiscriminantGroup,
    a2: DiscriminantGroup,
}

/// Computes the glue group of `S1 (+) S2` inside their common ambient
/// lattice. Preconditions: the sublattices are orthogonal, primitive, and
/// their ranks sum to the ambient rank.
pub fn glue_group(s1: &Sublattice, s2: &Sublattice) -> Result<GlueGroup, Error> {
    if s1.ambient() != s2.ambient() {
        return Err(Error::ParentMismatch);
    }
    let ambient = s1.ambient();
    let n = ambient.rank();
    if s1.rank() + s2.rank() != n {
        return Err(Error::DimensionMismatch(format!(
            "ranks {} + {} do not sum to ambient rank {}",
            s1.rank(),
            s2.rank(),
            n
        )));
    }
    let cross = s1.basis().transpose().mul(ambient.gram()).mul(s2.basis());
    if !cross.is_zero_matrix() {
        return Err(Error::InvalidLattice(
            "sublattices are not orthogonal".into(),
        ));
    }
    if !s1.is_primitive() || !s2.is_primitive() {
        return Err(Error::InvalidLattice(
            "glue requires primitive sublattices".into(),
        ));
    }

    let a1 = s1.discriminant_form()?;
    let a2 = s2.discriminant_form()?;

    // L/(S1+S2) as an abstract group: Z^n modulo the columns of [B1 | B2].
    let mut c = IntMatrix::zero(n, n);
    for j in 0..s1.rank() {
        for i in 0..n {
            c[(i, j)] = s1.basis()[(i, j)].clone();
        }
    }
    for j in 0..s2.rank() {
        for i in 0..n {
            c[(i, s1.rank() + j)] = s2.basis()[(i, j)].clone();
        }
    }
    let det_c = c.det()?;
    if det_c.is_zero() {
        return Err(Error::DependentVectors);
    }
    let order = det_c.abs();

    let snf = c.snf();
    let u_inv = crate::linalg::invert_unimodular(&snf.u);
    let mut divisors = Vec::new();
    let mut gens = Vec::new();
    for (i, d) in snf.d.iter().enumerate() {
        if d > &Int::one() {
            let rep = u_inv.column(i);
            let p1: Vec<Rat> = s1.project_dual(&rep).iter().map(mod1).collect();
            let p2: Vec<Rat> = s2.project_dual(&rep).iter().map(mod1).collect();
            divisors.push(d.clone());
            gens.push((p1, p2));
        }
    }

    let glue = GlueGroup {
        order,
        divisors,
        gens,
        a1,
        a2,
    };
    glue.check_order_identity(ambient)?;
    glue.check_isotropy()?;
    Ok(glue)
}

impl GlueGroup {
    pub fn order(&self) -> &Int {
        &self.order
    }

    /// Cyclic factor orders greater than one.
    pub fn divisors(&self) -> &[Int] {
        &self.divisors
    }

    pub fn gens(&self) -> &[(Vec<Rat>, Vec<Rat>)] {
        &self.gens
    }

    pub fn a1(&self) -> &DiscriminantGroup {
        &self.a1
    }

    pub fn a2(&self) -> &DiscriminantGroup {
        &self.a2
    }

    pub fn is_two_elementary(&self) -> bool {
        let two = Int::from(2);
        self.divisors.iter().all(|d| *d == two)
    }

    /// Rank as an elementary abelian 2-group.
    pub fn dim_f2(&self) -> Result<usize, Error> {
        if !self.is_two_elementary() {
            return Err(Error::InvalidLattice(
                "glue group is not 2-elementary".into(),
            ));
        }
        Ok(self.divisors.len())
    }

    /// `|Gamma|^2 * |A_L| = |A_S1| * |A_S2|`.
    fn check_order_identity(&self, ambient: &Lattice) -> Result<(), Error> {
        let lhs = &self.order * &self.order * ambient.det().abs();
        let rhs = self.a1.order() * self.a2.order();
        if lhs != rhs {
            return Err(Error::Inconsistency(format!(
                "glue order {} fails |Gamma|^2 |A_L| = |A_S1| |A_S2| ({} vs {})",
                self.order, lhs, rhs
            )));
        }
        Ok(())
    }

    /// Glue generators come from honest ambient vectors, so the summed form
    /// must vanish on them: `b1 + b2 = 0` in `Q/Z`, and for even lattices
    /// `q1 + q2 = 0` in `Q/2Z`.
    fn check_isotropy(&self) -> Result<(), Error> {
        for (x1, x2) in &self.gens {
            for (y1, y2) in &self.gens {
                let b = self.a1.b(x1, y1) + self.a2.b(x2, y2);
                if !b.is_integer() {
                    return Err(Error::Inconsistency(
                        "glue group is not isotropic for the summed bilinear form".into(),
                    ));
                }
            }
            if self.a1.is_even() && self.a2.is_even() {
                let q = self.a1.q(x1)? + self.a2.q(x2)?;
                if !(&q / Rat::from(Int::from(2))).is_integer() {
                    return Err(Error::Inconsistency(
                        "glue group is not isotropic for the summed quadratic form".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// For a 2-elementary glue group that is the graph of an isomorphism
    /// `A_S1 -> A_S2` (equal orders, projections bijective), returns the
    /// first component glued to the given second component.
    pub fn partner_of_second(&self, x2: &[Rat]) -> Result<Vec<Rat>, Error> {
        if !self.is_two_elementary() || !self.a2.is_two_elementary() {
            return Err(Error::InvalidLattice(
                "graph inversion implemented for 2-elementary glue only".into(),
            ));
        }
        let target = self.a2.coords_of(x2)?;
        let target_f2: Vec<u8> = target
            .iter()
            .map(|c| if c.is_zero() { 0 } else { 1 })
            .collect();
        // Solve sum eps_i * p2(g_i) = x2 in A_S2 coordinates over F_2.
        let dim = self.a2.two_torsion_dim();
        let mut rows = vec![Vec::with_capacity(self.gens.len()); dim];
        for (_, p2) in &self.gens {
            let coords = self.a2.coords_of(p2)?;
            for (i, c) in coords.iter().enumerate() {
                rows[i].push(if c.is_zero() { 0 } else { 1 });
            }
        }
        let mat = crate::f2::F2Matrix::new(rows, self.gens.len());
        let eps = mat.solve(&target_f2).ok_or(Error::Inconsistency(
            "element has no partner in the glue graph".into(),
        ))?;
        let mut x1 = self.a1.zero_element();
        for (e, (p1, _)) in eps.iter().zip(&self.gens) {
            if *e == 1 {
                x1 = self.a1.add(&x1, p1);
            }
        }
        Ok(x1)
    }

    /// Every element of the glue group, as `(p1, p2)` pairs. `None` when the
    /// order exceeds `limit`. Brute-force oracle support.
    pub fn elements(&self, limit: usize) -> Option<Vec<(Vec<Rat>, Vec<Rat>)>> {
        if self.order > Int::from(limit as u64) {
            return None;
        }
        let zero = (self.a1.zero_element(), self.a2.zero_element());
        let mut out = vec![zero];
        for (d, (g1, g2)) in self.divisors.iter().zip(&self.gens) {
            let d_usize = usize::try_from(d.clone()).expect("small divisor");
            let mut next = Vec::with_capacity(out.len() * d_usize);
            for (b1, b2) in &out {
                let mut c1 = b1.clone();
                let mut c2 = b2.clone();
                for _ in 0..d_usize {
                    next.push((c1.clone(), c2.clone()));
                    c1 = self.a1.add(&c1, g1);
                    c2 = self.a2.add(&c2, g2);
                }
            }
            out = next;
        }
        Some(out)
    }
}
