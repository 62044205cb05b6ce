//! Discriminant groups of nondegenerate integral lattices.
//!
//! For a lattice `S` with Gram matrix `G`, the discriminant group is
//! `A_S = S*/S`. Elements are represented by coset representatives written in
//! rational coordinates with respect to the basis of `S`; the canonical
//! representative has every entry reduced into `[0, 1)`. The finite bilinear
//! form `b` takes values in `Q/Z` (reduced into `[0,1)`), and for an even
//! lattice the finite quadratic form `q` takes values in `Q/2Z` (reduced into
//! `[0,2)`).

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{Int, IntMatrix, Rat};

/// Reduces a rational into `[0, 1)`.
pub fn mod1(x: &Rat) -> Rat {
    x - x.floor()
}

/// Reduces a rational into `[0, 2)`.
pub fn mod2(x: &Rat) -> Rat {
    let two = Rat::from(Int::from(2));
    let half = x / &two;
    x - (half.floor() * two)
}

/// `x^T * gram * y` over the rationals.
pub fn gram_pairing(gram: &IntMatrix, x: &[Rat], y: &[Rat]) -> Rat {
    assert_eq!(x.len(), gram.rows());
    assert_eq!(y.len(), gram.cols());
    let mut acc = Rat::zero();
    for i in 0..gram.rows() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..gram.cols() {
            if y[j].is_zero() || gram[(i, j)].is_zero() {
                continue;
            }
            acc += &x[i] * Rat::from(gram[(i, j)].clone()) * &y[j];
        }
    }
    acc
}

pub fn add_vecs(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// The discriminant group `A_S = S*/S` together with its finite forms.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    gram: IntMatrix,
    even: bool,
    order: Int,
    /// Elementary divisors > 1, in a divisibility chain.
    divisors: Vec<Int>,
    /// Canonical coset representatives generating the cyclic factors, in the
    /// same order as `divisors`.
    gens: Vec<Vec<Rat>>,
    /// Left SNF transform of the Gram matrix and the full diagonal,
    /// kept for coordinate computations.
    snf_u: IntMatrix,
    snf_d: Vec<Int>,
}

impl DiscriminantGroup {
    /// Builds the discriminant group of the lattice with the given Gram
    /// matrix. Fails on non-symmetric or degenerate input.
    pub fn new(gram: &IntMatrix) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric { i: 0, j: 0 });
        }
        let det = gram.det()?;
        if det.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let even = (0..gram.rows()).all(|i| (&gram[(i, i)] % Int::from(2)).is_zero());
        let gram_inv = gram.to_rational().inverse().expect("nondegenerate");
        let snf = gram.snf();
        let u_inv = crate::linalg::invert_unimodular(&snf.u);
        let mut divisors = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in snf.d.iter().enumerate() {
            if d > &Int::one() {
                // Dual-basis coordinates of the generator are the i-th
                // column of U^{-1}; lattice-basis coordinates follow by
                // applying G^{-1}.
                let z = u_inv.column(i);
                let zr: Vec<Rat> = z.into_iter().map(Rat::from).collect();
                let x = gram_inv.mul_vec(&zr);
                gens.push(x.iter().map(mod1).collect());
                divisors.push(d.clone());
            }
        }
        Ok(DiscriminantGroup {
            gram: gram.clone(),
            even,
            order: det.abs(),
            divisors,
            gens,
            snf_u: snf.u,
            snf_d: snf.d,
        })
    }

    pub fn order(&self) -> &Int {
        &self.order
    }

    /// Minimal number of generators (the length of the group).
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Length of the coordinate vectors representing elements: the rank of
    /// the underlying lattice, not of the group.
    fn coord_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Elementary divisors greater than one.
    pub fn divisors(&self) -> &[Int] {
        &self.divisors
    }

    /// Canonical generators matching [`DiscriminantGroup::divisors`].
    pub fn gens(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    pub fn is_two_elementary(&self) -> bool {
        let two = Int::from(2);
        self.divisors.iter().all(|d| *d == two)
    }

    pub fn zero_element(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.coord_dim()]
    }

    /// Canonical representative of the coset of `x`.
    pub fn reduce(&self, x: &[Rat]) -> Vec<Rat> {
        x.iter().map(mod1).collect()
    }

    pub fn add(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.reduce(&add_vecs(x, y))
    }

    pub fn neg(&self, x: &[Rat]) -> Vec<Rat> {
        let neg: Vec<Rat> = x.iter().map(|a| -a.clone()).collect();
        self.reduce(&neg)
    }

    pub fn scale(&self, k: &Int, x: &[Rat]) -> Vec<Rat> {
        let kr = Rat::from(k.clone());
        let s: Vec<Rat> = x.iter().map(|a| a * &kr).collect();
        self.reduce(&s)
    }

    pub fn is_zero(&self, x: &[Rat]) -> bool {
        self.reduce(x).iter().all(|a| a.is_zero())
    }

    /// True when `x` (rational coordinates in the lattice basis) lies in the
    /// dual lattice, i.e. represents an element of the group.
    pub fn in_dual(&self, x: &[Rat]) -> bool {
        let gx = (0..self.coord_dim()).map(|i| {
            let mut acc = Rat::zero();
            for j in 0..self.coord_dim() {
                acc += Rat::from(self.gram[(i, j)].clone()) * &x[j];
            }
            acc
        });
        gx.into_iter().all(|v| v.is_integer())
    }

    /// Cyclic coordinates of an element with respect to the canonical
    /// generators: `x = sum coords[i] * gens[i]` with `coords[i]` taken
    /// mod `divisors[i]`.
    pub fn coords_of(&self, x: &[Rat]) -> Result<Vec<Int>, Error> {
        if x.len() != self.coord_dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, lattice rank is {}",
                x.len(),
                self.coord_dim()
            )));
        }
        // Dual-basis coordinates.
        let mut z = Vec::with_capacity(self.coord_dim());
        for i in 0..self.coord_dim() {
            let mut acc = Rat::zero();
            for j in 0..self.coord_dim() {
                acc += Rat::from(self.gram[(i, j)].clone()) * &x[j];
            }
            if !acc.is_integer() {
                return Err(Error::NotInDual);
            }
            z.push(acc.to_integer());
        }
        let uz = self.snf_u.mul_vec(&z);
        let mut coords = Vec::new();
        for (i, d) in self.snf_d.iter().enumerate() {
            if d > &Int::one() {
                coords.push(num::Integer::mod_floor(&uz[i], d));
            }
        }
        Ok(coords)
    }

    pub fn from_coords(&self, coords: &[Int]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.gens.len());
        let mut acc = self.zero_element();
        for (c, g) in coords.iter().zip(&self.gens) {
            let scaled = self.scale(c, g);
            acc = self.add(&acc, &scaled);
        }
        acc
    }

    /// Finite bilinear form, reduced into `[0, 1)`.
    pub fn b(&self, x: &[Rat], y: &[Rat]) -> Rat {
        mod1(&gram_pairing(&self.gram, x, y))
    }

    /// Finite quadratic form, reduced into `[0, 2)`. Defined only when the
    /// source lattice is even.
    pub fn q(&self, x: &[Rat]) -> Result<Rat, Error> {
        if !self.even {
            return Err(Error::OddLattice);
        }
        Ok(mod2(&gram_pairing(&self.gram, x, x)))
    }

    /// Smallest `k > 0` with `k * x = 0`.
    pub fn element_order(&self, x: &[Rat]) -> Int {
        let mut lcm = Int::one();
        for c in self.reduce(x) {
            lcm = num::Integer::lcm(&lcm, c.denom());
        }
        lcm
    }

    /// Generators of the 2-torsion layer `Ann(2) = {x : 2x = 0}`: one
    /// generator `(d/2) * g` per cyclic factor of even order `d`.
    pub fn two_torsion_gens(&self) -> Vec<Vec<Rat>> {
        let two = Int::from(2);
        let mut out = Vec::new();
        for (d, g) in self.divisors.iter().zip(&self.gens) {
            if (d % &two).is_zero() {
                out.push(self.scale(&(d / &two), g));
            }
        }
        out
    }

    pub fn two_torsion_dim(&self) -> usize {
        let two = Int::from(2);
        self.divisors.iter().filter(|d| (*d % &two).is_zero()).count()
    }

    /// Every element of the group, as canonical representatives. Guarded to
    /// small orders; meant for brute-force verification.
    pub fn enumerate_elements(&self, limit: usize) -> Option<Vec<Vec<Rat>>> {
        if self.order > Int::from(limit as u64) {
            return None;
        }
        let mut out = vec![self.zero_element()];
        for (d, g) in self.divisors.iter().zip(&self.gens) {
            let d_usize = usize::try_from(d.clone()).expect("small divisor");
            let mut next = Vec::with_capacity(out.len() * d_usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..d_usize {
                    next.push(cur.clone());
                    cur = self.add(&cur, g);
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// Subgroup of `(Q/Z)^n`-style cosets generated by closing a generating set
/// under addition. This is the independent brute-force oracle for
/// discriminant group orders: no Smith form is involved.
pub fn closure_of_cosets(rank: usize, gens: &[Vec<Rat>], limit: usize) -> Option<Vec<Vec<Rat>>> {
    use std::collections::BTreeSet;
    let key = |v: &[Rat]| -> Vec<(BigInt, BigInt)> {
        v.iter()
            .map(mod1)
            .map(|r| (r.numer().clone(), r.denom().clone()))
            .collect()
    };
    let zero = vec![Rat::zero(); rank];
    let mut seen = BTreeSet::new();
    seen.insert(key(&zero));
    let mut frontier = vec![zero.clone()];
    let mut all = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<Rat> = add_vecs(&x, g).iter().map(mod1).collect();
            if seen.insert(key(&y)) {
                if all.len() >= limit {
                    return None;
                }
                all.push(y.clone());
                frontier.push(y);
            }
        }
    }
    Some(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn rank_one_even_lattice() {
        let g = IntMatrix::from_rows(&[vec![2]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert_eq!(a.order(), &int(2));
        assert_eq!(a.divisors(), &[int(2)]);
        let gen = &a.gens()[0];
        assert_eq!(a.q(gen).unwrap(), rat(1, 2));
        assert_eq!(a.b(gen, gen), rat(1, 2));
    }

    #[test]
    fn rank_one_negative_even_lattice() {
        let g = IntMatrix::from_rows(&[vec![-2]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        let gen = &a.gens()[0];
        // -1/2 mod 2Z = 3/2
        assert_eq!(a.q(gen).unwrap(), rat(3, 2));
    }

    #[test]
    fn doubled_hyperbolic_plane() {
        let g = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert_eq!(a.order(), &int(4));
        assert!(a.is_two_elementary());
        let g0 = &a.gens()[0];
        let g1 = &a.gens()[1];
        assert_eq!(a.q(g0).unwrap(), Rat::zero());
        assert_eq!(a.q(g1).unwrap(), Rat::zero());
        assert_eq!(a.b(g0, g1), rat(1, 2));
        let s = a.add(g0, g1);
        // q(x+y) = q(x) + q(y) + 2 b(x,y) in Q/2Z
        assert_eq!(a.q(&s).unwrap(), rat(1, 1));
    }

    #[test]
    fn odd_lattice_has_no_quadratic_form() {
        let g = IntMatrix::from_rows(&[vec![1, 0], vec![0, 3]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert!(!a.is_even());
        assert_eq!(a.order(), &int(3));
        assert_eq!(a.divisors(), &[int(3)]);
        let gen = &a.gens()[0];
        let b = a.b(gen, gen);
        assert!(b == rat(1, 3) || b == rat(2, 3));
        assert!(matches!(a.q(gen), Err(Error::OddLattice)));
    }

    #[test]
    fn cyclic_four_and_its_two_torsion() {
        let g = IntMatrix::from_rows(&[vec![4]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert_eq!(a.divisors(), &[int(4)]);
        let t = a.two_torsion_gens();
        assert_eq!(t.len(), 1);
        assert_eq!(a.q(&t[0]).unwrap(), rat(1, 1));
        assert_eq!(a.element_order(&t[0]), int(2));
    }

    #[test]
    fn unimodular_lattice_trivial_group() {
        let g = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert!(a.is_trivial());
        assert_eq!(a.order(), &int(1));
    }

    #[test]
    fn coords_roundtrip() {
        let g = IntMatrix::from_rows(&[vec![2, 1], vec![1, 4]]);
        let a = DiscriminantGroup::new(&g).unwrap();
        assert_eq!(a.order(), &int(7));
        let all = a.enumerate_elements(100).unwrap();
        assert_eq!(all.len(), 7);
        for x in &all {
            let c = a.coords_of(x).unwrap();
            assert_eq!(a.from_coords(&c), a.reduce(x));
        }
    }

    #[test]
    fn closure_orders_match_snf_path() {
        for rows in [
            vec![vec![2, 0], vec![0, -4]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![0, 3], vec![3, 0]],
        ] {
            let g = IntMatrix::from_rows(&rows);
            let a = DiscriminantGroup::new(&g).unwrap();
            let gram_inv = g.to_rational().inverse().unwrap();
            let cols: Vec<Vec<Rat>> = (0..g.rows()).map(|j| gram_inv.column(j)).collect();
            let closure = closure_of_cosets(g.rows(), &cols, 1 << 12).unwrap();
            assert_eq!(Int::from(closure.len() as u64), a.order().clone());
        }
    }

    #[test]
    fn degenerate_gram_rejected() {
        let g = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(
            DiscriminantGroup::new(&g),
            Err(Error::DegenerateForm)
        ));
    }
}
