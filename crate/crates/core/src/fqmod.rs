//! Finite quadratic and bilinear forms over F_2: the full discriminant group
//! of a 2-elementary lattice, and the two-torsion layer `Ann(2)` of a general
//! discriminant group.
//!
//! Both views coordinatize group elements as F_2 vectors so that subgroups
//! become [`Subspace`]s, the bilinear form becomes a symmetric F_2 matrix
//! `beta` with `beta[i][j] = 2 b(g_i, g_j) mod 2`, and the characteristic
//! element (the `v` with `b(x, x) = b(x, v)` for all `x`) becomes the
//! solution of `beta v = diag(beta)`.

use num::{Integer as _, Zero};

use crate::disc::DiscriminantGroup;
use crate::error::Error;
use crate::f2::{F2Matrix, Subspace};
use crate::linalg::{Int, Rat};

fn two_b_mod2(b: &Rat) -> Result<u8, Error> {
    let doubled = b * Rat::from(Int::from(2));
    if !doubled.is_integer() {
        return Err(Error::InvalidLattice(
            "bilinear form does not take values in (1/2)Z/Z on two-torsion".into(),
        ));
    }
    Ok(if doubled.to_integer().mod_floor(&Int::from(2)).is_zero() {
        0
    } else {
        1
    })
}

/// The discriminant form of a 2-elementary lattice, coordinatized over F_2.
#[derive(Clone, Debug)]
pub struct TwoElementaryForm {
    disc: DiscriminantGroup,
}

impl TwoElementaryForm {
    pub fn new(disc: DiscriminantGroup) -> Result<Self, Error> {
        if !disc.is_two_elementary() {
            return Err(Error::InvalidLattice(
                "discriminant group is not 2-elementary".into(),
            ));
        }
        Ok(TwoElementaryForm { disc })
    }

    pub fn disc(&self) -> &DiscriminantGroup {
        &self.disc
    }

    pub fn dim(&self) -> usize {
        self.disc.rank()
    }

    pub fn coords(&self, x: &[Rat]) -> Result<Vec<u8>, Error> {
        let coords = self.disc.coords_of(x)?;
        Ok(coords
            .iter()
            .map(|c| if c.is_zero() { 0 } else { 1 })
            .collect())
    }

    pub fn element(&self, coords: &[u8]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim());
        let ints: Vec<Int> = coords.iter().map(|&c| Int::from(c)).collect();
        self.disc.from_coords(&ints)
    }

    /// `beta[i][j] = 2 b(g_i, g_j) mod 2` for the canonical generators.
    pub fn b_matrix(&self) -> Result<F2Matrix, Error> {
        let n = self.dim();
        let gens = self.disc.gens();
        let mut rows = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = two_b_mod2(&self.disc.b(&gens[i], &gens[j]))?;
            }
        }
        Ok(F2Matrix::new(rows, n))
    }

    pub fn b_f2(&self, x: &[u8], y: &[u8]) -> Result<u8, Error> {
        let beta = self.b_matrix()?;
        let by = beta.mul_vec(y);
        Ok(x.iter().zip(&by).map(|(a, b)| a & b).fold(0, |s, t| s ^ t))
    }

    /// The unique `v` with `b(x, x) = b(x, v)` for all `x`; fails with
    /// [`Error::DegenerateForm`] when the bilinear form is degenerate.
    pub fn characteristic_element(&self) -> Result<Vec<u8>, Error> {
        let beta = self.b_matrix()?;
        if beta.rank() != self.dim() {
            return Err(Error::DegenerateForm);
        }
        let diag: Vec<u8> = (0..self.dim()).map(|i| beta.get(i, i)).collect();
        beta.solve(&diag).ok_or(Error::DegenerateForm)
    }

    /// Orthogonal complement of a subspace for the bilinear form.
    pub fn orthogonal_complement(&self, h: &Subspace) -> Result<Subspace, Error> {
        let beta = self.b_matrix()?;
        let n = self.dim();
        if h.dim() == 0 {
            return Ok(Subspace::full(n));
        }
        let mut rows = Vec::with_capacity(h.dim());
        for v in h.basis_vectors() {
            rows.push(beta.mul_vec(&v));
        }
        let pairing = F2Matrix::new(rows, n);
        let kernel = pairing.kernel();
        let mut basis = Vec::new();
        for i in 0..kernel.rows() {
            basis.push(kernel.row(i).to_vec());
        }
        Ok(Subspace::from_spanning(&basis, n))
    }

    /// Whether the bilinear form vanishes identically on the subspace.
    pub fn is_isotropic(&self, h: &Subspace) -> Result<bool, Error> {
        let basis = h.basis_vectors();
        for x in &basis {
            for y in &basis {
                if self.b_f2(x, y)? == 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn subspace_from_elements(&self, elems: &[Vec<Rat>]) -> Result<Subspace, Error> {
        let mut vectors = Vec::with_capacity(elems.len());
        for e in elems {
            vectors.push(self.coords(e)?);
        }
        Ok(Subspace::from_spanning(&vectors, self.dim()))
    }

    pub fn q_value(&self, coords: &[u8]) -> Result<Rat, Error> {
        self.disc.q(&self.element(coords))
    }

    /// `q = 0` in `Q/2Z` on every element of the subspace.
    pub fn q_vanishes_on(&self, h: &Subspace) -> Result<bool, Error> {
        for coords in h.elements() {
            if !self.q_value(&coords)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The two-torsion layer `Ann(2)` of a discriminant group, coordinatized
/// over F_2. The underlying group may have exponent larger than 2.
#[derive(Clone, Debug)]
pub struct TwoTorsionLayer {
    parent: DiscriminantGroup,
    basis: Vec<Vec<Rat>>,
    even_positions: Vec<usize>,
}

impl TwoTorsionLayer {
    pub fn of(parent: &DiscriminantGroup) -> Self {
        let basis = parent.two_torsion_gens();
        let two = Int::from(2);
        let even_positions = parent
            .divisors()
            .iter()
            .enumerate()
            .filter(|(_, d)| d.mod_floor(&two).is_zero())
            .map(|(i, _)| i)
            .collect();
        TwoTorsionLayer {
            parent: parent.clone(),
            basis,
            even_positions,
        }
    }

    pub fn parent(&self) -> &DiscriminantGroup {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn element(&self, coords: &[u8]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim());
        let mut acc = self.parent.zero_element();
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c == 1 {
                acc = self.parent.add(&acc, b);
            }
        }
        acc
    }

    /// Coordinates of a two-torsion element with respect to the layer basis;
    /// errors when the element does not lie in `Ann(2)`.
    pub fn coords(&self, x: &[Rat]) -> Result<Vec<u8>, Error> {
        let parent_coords = self.parent.coords_of(x)?;
        let divisors = self.parent.divisors();
        let two = Int::from(2);
        let mut out = vec![0u8; self.dim()];
        for (i, c) in parent_coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = &divisors[i];
            if d.mod_floor(&two).is_zero() && *c == d / &two {
                let pos = self
                    .even_positions
                    .iter()
                    .position(|&p| p == i)
                    .expect("even divisor position");
                out[pos] = 1;
            } else {
                return Err(Error::InvalidLattice(
                    "element is not two-torsion".into(),
                ));
            }
        }
        Ok(out)
    }

    /// `beta[i][j] = 2 b(u_i, u_j) mod 2` for the layer basis.
    pub fn b_matrix(&self) -> Result<F2Matrix, Error> {
        let n = self.dim();
        let mut rows = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = two_b_mod2(&self.parent.b(&self.basis[i], &self.basis[j]))?;
            }
        }
        Ok(F2Matrix::new(rows, n))
    }

    /// Kernel of the bilinear form restricted to the layer.
    pub fn radical(&self) -> Result<Subspace, Error> {
        let beta = self.b_matrix()?;
        let kernel = beta.kernel();
        let mut basis = Vec::new();
        for i in 0..kernel.rows() {
            basis.push(kernel.row(i).to_vec());
        }
        Ok(Subspace::from_spanning(&basis, self.dim()))
    }

    /// The subgroup `2A` inside the layer; requires the parent group to have
    /// exponent dividing 4.
    pub fn double_subgroup(&self) -> Result<Subspace, Error> {
        let four = Int::from(4);
        let two = Int::from(2);
        let mut vectors = Vec::new();
        for (d, g) in self.parent.divisors().iter().zip(self.parent.gens()) {
            if d > &four {
                return Err(Error::InvalidLattice(
                    "group has exponent larger than 4".into(),
                ));
            }
            if *d == four {
                let doubled = self.parent.scale(&two, g);
                vectors.push(self.coords(&doubled)?);
            }
        }
        Ok(Subspace::from_spanning(&vectors, self.dim()))
    }

    /// `b(x, x) = 0` for every layer element; holds for the two-torsion part
    /// of the discriminant of an even lattice that embeds into an even
    /// unimodular overlattice with even orthogonal complement.
    pub fn b_diag_vanishes(&self) -> Result<bool, Error> {
        for u in &self.basis {
            if two_b_mod2(&self.parent.b(u, u))? == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `x` is characteristic for the restriction of `b` to the
    /// layer: `b(u, u) = b(u, x)` for every layer element `u`.
    pub fn is_characteristic(&self, x: &[Rat]) -> Result<bool, Error> {
        for u in &self.basis {
            let lhs = two_b_mod2(&self.parent.b(u, u))?;
            let rhs = two_b_mod2(&self.parent.b(u, x))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `q = 0` in `Q/2Z` on every element of the subspace (coordinates taken
    /// in the layer basis).
    pub fn q_vanishes_on(&self, h: &Subspace) -> Result<bool, Error> {
        for coords in h.elements() {
            let q = self.parent.q(&self.element(&coords))?;
            if !q.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, IntMatrix};

    fn disc_of(rows: &[Vec<i64>]) -> DiscriminantGroup {
        DiscriminantGroup::new(&IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn characteristic_element_of_even_form_is_zero() {
        let u2 = disc_of(&[vec![0, 2], vec![2, 0]]);
        let form = TwoElementaryForm::new(u2).unwrap();
        let v = form.characteristic_element().unwrap();
        assert_eq!(v, vec![0, 0]);
    }

    #[test]
    fn characteristic_element_of_odd_form() {
        let d = disc_of(&[vec![2, 0], vec![0, -2]]);
        let form = TwoElementaryForm::new(d).unwrap();
        let beta = form.b_matrix().unwrap();
        assert_eq!(beta.get(0, 0), 1);
        assert_eq!(beta.get(1, 1), 1);
        assert_eq!(beta.get(0, 1), 0);
        let v = form.characteristic_element().unwrap();
        assert_eq!(v, vec![1, 1]);
        // v really is characteristic
        for x in [[0u8, 1], [1, 0], [1, 1]] {
            let bxx = form.b_f2(&x, &x).unwrap();
            let bxv = form.b_f2(&x, &v).unwrap();
            assert_eq!(bxx, bxv);
        }
        // q(v) is integral even though the form is odd
        assert_eq!(form.q_value(&v).unwrap(), rat(0, 1));
    }

    #[test]
    fn complement_dimensions_add_up() {
        let d = disc_of(&[vec![2, 0], vec![0, -2]]);
        let form = TwoElementaryForm::new(d).unwrap();
        let h = Subspace::from_spanning(&[vec![1, 0]], 2);
        let perp = form.orthogonal_complement(&h).unwrap();
        assert_eq!(perp.dim(), 1);
        assert!(perp.contains(&[0, 1]));
        assert!(!form.is_isotropic(&h).unwrap());
    }

    #[test]
    fn layer_of_order_four_group() {
        let d = disc_of(&[vec![4]]);
        let layer = TwoTorsionLayer::of(&d);
        assert_eq!(layer.dim(), 1);
        assert_eq!(layer.basis()[0], vec![rat(1, 2)]);
        assert!(layer.b_diag_vanishes().unwrap());
        let rad = layer.radical().unwrap();
        let dbl = layer.double_subgroup().unwrap();
        assert_eq!(rad.dim(), 1);
        assert_eq!(rad, dbl);
        // q(2g) = 1 mod 2, so q does not vanish on the radical
        assert!(!layer.q_vanishes_on(&rad).unwrap());
    }

    #[test]
    fn layer_coords_roundtrip_and_reject() {
        let d = disc_of(&[
            vec![0, 2, 0, 0],
            vec![2, 0, 0, 0],
            vec![0, 0, 4, 0],
            vec![0, 0, 0, 4],
        ]);
        let layer = TwoTorsionLayer::of(&d);
        assert_eq!(layer.dim(), 4);
        for i in 0..4 {
            let mut c = vec![0u8; 4];
            c[i] = 1;
            let e = layer.element(&c);
            assert_eq!(layer.coords(&e).unwrap(), c);
        }
        // a generator of order 4 is not two-torsion
        let g_order4 = d.gens().iter().find(|g| d.element_order(g) == 4.into());
        assert!(layer.coords(g_order4.unwrap()).is_err());
        // 2A has dimension 2 here
        assert_eq!(layer.double_subgroup().unwrap().dim(), 2);
    }
}
