//! Built-in lattices and involution triples: the K3 lattice `U^3 (+) E8^2`
//! (with `E8` negative definite), the fixed-point-free holomorphic
//! involution `tau` exchanging the two `E8` summands and the last two `U`
//! summands, and a family of commuting involutions `sigma` built from block
//! actions on the summands.

use crate::error::Error;
use crate::invol::Involution;
use crate::lattice::Lattice;
use crate::linalg::{Int, IntMatrix};

/// The hyperbolic plane `U`.
pub fn hyperbolic_plane() -> Lattice {
    Lattice::new("U", IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap()
}

/// Negative definite `E8`: the negated Cartan matrix, nodes numbered so that
/// the chain is 1-3-4-5-6-7-8 with 2 attached to 4.
pub fn e8() -> Lattice {
    let mut gram = IntMatrix::zero(8, 8);
    for i in 0..8 {
        gram[(i, i)] = Int::from(-2);
    }
    for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
        gram[(i - 1, j - 1)] = Int::from(1);
        gram[(j - 1, i - 1)] = Int::from(1);
    }
    Lattice::new("E8", gram).unwrap()
}

/// The K3 lattice `U (+) U (+) U (+) E8 (+) E8`, even unimodular of
/// signature `(3, 19)`.
pub fn k3_lattice() -> Lattice {
    let u = hyperbolic_plane();
    let e = e8();
    let gram = IntMatrix::block_diag(&[u.gram(), u.gram(), u.gram(), e.gram(), e.gram()]);
    Lattice::new("K3", gram).unwrap()
}

/// Rank-one lattice `<n>`.
pub fn rank_one(n: i64) -> Lattice {
    Lattice::new(format!("<{}>", n), IntMatrix::from_rows(&[vec![n]])).unwrap()
}

/// Lattices available by name: `U`, `U(2)`, `E8`, `E8(2)`, `K3`, `<n>`.
pub fn named_lattice(name: &str) -> Option<Lattice> {
    match name {
        "U" => Some(hyperbolic_plane()),
        "U(2)" => Some(hyperbolic_plane().rescale(2)),
        "E8" => Some(e8()),
        "E8(2)" => Some(e8().rescale(2)),
        "K3" => Some(k3_lattice()),
        _ => {
            let inner = name.strip_prefix('<')?.strip_suffix('>')?;
            let n: i64 = inner.trim().parse().ok()?;
            Some(rank_one(n))
        }
    }
}

fn swap_block(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = Int::from(1);
        m[(n + i, i)] = Int::from(1);
    }
    m
}

/// The fixed-point-free holomorphic involution of the K3 lattice:
/// `(x, y, z, a, b) -> (-x, z, y, b, a)`. Its fixed lattice is
/// `U(2) (+) E8(2)` with invariants `(10, 10, 0)`.
pub fn tau_reference() -> Involution {
    let l = k3_lattice();
    let m = IntMatrix::block_diag(&[&IntMatrix::identity(2).neg(), &swap_block(2), &swap_block(8)]);
    Involution::new(&l, m).expect("tau is an involutive isometry")
}

/// Involutions of the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UInvolution {
    Id,
    Neg,
    Swap,
    NegSwap,
}

impl UInvolution {
    pub fn matrix(&self) -> IntMatrix {
        match self {
            UInvolution::Id => IntMatrix::identity(2),
            UInvolution::Neg => IntMatrix::identity(2).neg(),
            UInvolution::Swap => IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
            UInvolution::NegSwap => IntMatrix::from_rows(&[vec![0, -1], vec![-1, 0]]),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            UInvolution::Id => "id",
            UInvolution::Neg => "neg",
            UInvolution::Swap => "swap",
            UInvolution::NegSwap => "negswap",
        }
    }
}

/// How an involution acts on a pair of identical summands that `tau` swaps:
/// either `(u, v) -> (C u, C v)` or `(u, v) -> (C v, C u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAction {
    pub antidiagonal: bool,
    pub factor: IntMatrix,
}

impl PairAction {
    pub fn diagonal(factor: IntMatrix) -> Self {
        PairAction {
            antidiagonal: false,
            factor,
        }
    }

    pub fn antidiagonal(factor: IntMatrix) -> Self {
        PairAction {
            antidiagonal: true,
            factor,
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.factor.rows();
        let mut m = IntMatrix::zero(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.antidiagonal {
                    m[(i, n + j)] = self.factor[(i, j)].clone();
                    m[(n + i, j)] = self.factor[(i, j)].clone();
                } else {
                    m[(i, j)] = self.factor[(i, j)].clone();
                    m[(n + i, n + j)] = self.factor[(i, j)].clone();
                }
            }
        }
        m
    }
}

/// Product of the reflections in the given pairwise orthogonal roots of
/// `E8` (coordinates in the simple-root basis), negated when `negate` holds.
pub fn e8_roots_involution(roots: &[[i64; 8]], negate: bool) -> IntMatrix {
    let lattice = e8();
    let g = lattice.gram();
    let mut m = IntMatrix::identity(8);
    for root in roots {
        // reflection in a root of square -2: x -> x + (x, alpha) alpha
        let mut s = IntMatrix::identity(8);
        for j in 0..8 {
            let mut pairing = Int::from(0);
            for k in 0..8 {
                pairing = &pairing + &(&g[(k, j)] * &Int::from(root[k]));
            }
            for i in 0..8 {
                s[(i, j)] = &s[(i, j)] + &(&Int::from(root[i]) * &pairing);
            }
        }
        m = m.mul(&s);
    }
    if negate {
        m = m.neg();
    }
    m
}

/// Product of the reflections in the chosen simple roots of `E8` (the listed
/// node numbers must be pairwise non-adjacent), negated when `negate` holds.
pub fn e8_root_involution(nodes: &[usize], negate: bool) -> IntMatrix {
    let roots: Vec<[i64; 8]> = nodes
        .iter()
        .map(|&node| {
            assert!((1..=8).contains(&node));
            let mut v = [0i64; 8];
            v[node - 1] = 1;
            v
        })
        .collect();
    e8_roots_involution(&roots, negate)
}

/// Four pairwise orthogonal roots of `E8` whose half-sum lies in `E8`. Their
/// span is an index-two sublattice of a copy of `D4`, so the fixed lattice
/// of the product of the four reflections is the complementary `D4`, with
/// invariants `(4, 2, 0)`.
pub fn d4_root_quadruple() -> [[i64; 8]; 4] {
    [
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [2, 2, 4, 5, 4, 3, 2, 1],
    ]
}

/// Involution of `U (+) E8` (basis: the two isotropic `U` generators, then
/// the eight simple roots) whose fixed lattice is a copy of `D8` with
/// invariants `(8, 2, 0)`: the span of the last seven simple roots together
/// with `e - h`, where `e` is the first `U` generator and `h` the highest
/// root. The complementary eigenlattice is isomorphic to `U(2)`, so no
/// involution preserving the direct-sum splitting has these invariants.
pub fn d8_mixing_involution() -> IntMatrix {
    let gram = IntMatrix::block_diag(&[hyperbolic_plane().gram(), e8().gram()]);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for node in 2..=8usize {
        let mut v = vec![0i64; 10];
        v[1 + node] = 1;
        basis.push(v);
    }
    let highest = [2i64, 3, 4, 6, 5, 4, 3, 2];
    let mut bridge = vec![0i64; 10];
    bridge[0] = 1;
    for (i, c) in highest.iter().enumerate() {
        bridge[2 + i] = -c;
    }
    basis.push(bridge);
    let b = IntMatrix::from_rows(&basis).transpose();
    let span_gram = b.transpose().mul(&gram).mul(&b).to_rational();
    let projection = b
        .to_rational()
        .mul(&span_gram.inverse().expect("the span is nondegenerate"))
        .mul(&b.transpose().to_rational())
        .mul(&gram.to_rational());
    let mut m = IntMatrix::zero(10, 10);
    for i in 0..10 {
        for j in 0..10 {
            let mut doubled = &projection[(i, j)] + &projection[(i, j)];
            if i == j {
                doubled = &doubled - &crate::linalg::rat(1, 1);
            }
            assert!(doubled.is_integer(), "the glue between the eigenlattices is 2-elementary");
            m[(i, j)] = doubled.to_integer();
        }
    }
    m
}

/// How a commuting partner for `tau` acts on the four summands that `tau`
/// swaps: either independent pair actions on the two `U` summands and the
/// two `E8` summands, or one rank-10 action relating the two `U (+) E8`
/// copies (the second `U` with the first `E8`, and the third `U` with the
/// second `E8`), which allows fixed lattices mixing the `U` and `E8`
/// directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSpec {
    PerSummand {
        u_pair: PairAction,
        e8_pair: PairAction,
    },
    Copy(PairAction),
}

/// A commuting partner for the reference `tau`: an involution of the first
/// `U` summand together with a pair action on the summands `tau` swaps.
#[derive(Clone, Debug)]
pub struct SigmaSpec {
    pub u1: UInvolution,
    pub pairs: PairSpec,
}

/// Basis positions of the first `U (+) E8` copy inside the K3 lattice.
const COPY_ONE: [usize; 10] = [2, 3, 6, 7, 8, 9, 10, 11, 12, 13];
/// Basis positions of the second `U (+) E8` copy inside the K3 lattice.
const COPY_TWO: [usize; 10] = [4, 5, 14, 15, 16, 17, 18, 19, 20, 21];

impl SigmaSpec {
    pub fn per_summand(u1: UInvolution, u_pair: PairAction, e8_pair: PairAction) -> Self {
        SigmaSpec {
            u1,
            pairs: PairSpec::PerSummand { u_pair, e8_pair },
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        match &self.pairs {
            PairSpec::PerSummand { u_pair, e8_pair } => IntMatrix::block_diag(&[
                &self.u1.matrix(),
                &u_pair.matrix(),
                &e8_pair.matrix(),
            ]),
            PairSpec::Copy(action) => {
                assert_eq!(action.factor.rows(), 10);
                let mut m = IntMatrix::zero(22, 22);
                let u1 = self.u1.matrix();
                for i in 0..2 {
                    for j in 0..2 {
                        m[(i, j)] = u1[(i, j)].clone();
                    }
                }
                for i in 0..10 {
                    for j in 0..10 {
                        let v = action.factor[(i, j)].clone();
                        if action.antidiagonal {
                            m[(COPY_ONE[i], COPY_TWO[j])] = v.clone();
                            m[(COPY_TWO[i], COPY_ONE[j])] = v;
                        } else {
                            m[(COPY_ONE[i], COPY_ONE[j])] = v.clone();
                            m[(COPY_TWO[i], COPY_TWO[j])] = v;
                        }
                    }
                }
                m
            }
        }
    }

    pub fn involution(&self) -> Result<Involution, Error> {
        Involution::new(&k3_lattice(), self.matrix())
    }
}

/// The reference antiholomorphic partner: swap on the first `U`, negation
/// everywhere else. Invariants `(1, 1, 1)`; composed with `tau` it has
/// invariants `(11, 11, 1)`.
pub fn sigma_reference() -> Involution {
    reference_entry()
        .spec
        .involution()
        .expect("reference sigma is valid")
}

/// A named triple from the built-in family.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub spec: SigmaSpec,
    /// Invariants of the action induced on the halved fixed lattice of tau.
    pub expected_theta: (usize, usize, u8),
    /// Whether both fixed lattices of `sigma` and `tau sigma` are
    /// hyperbolic, as for involutions coming from a real Enriques surface.
    pub geometric: bool,
    /// Present on entries kept only to exercise rejection paths; the
    /// analysis refuses them with an input error.
    pub warning: Option<&'static str>,
}

impl CatalogEntry {
    pub fn tau(&self) -> Involution {
        tau_reference()
    }

    pub fn sigma(&self) -> Involution {
        self.spec.involution().expect("catalog entries are valid")
    }
}

fn neg2() -> IntMatrix {
    IntMatrix::identity(2).neg()
}

fn negswap2() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, -1], vec![-1, 0]])
}

fn reference_entry() -> CatalogEntry {
    CatalogEntry {
        name: "reference",
        summary: "swap on the first U, negation elsewhere",
        spec: SigmaSpec::per_summand(
            UInvolution::Swap,
            PairAction::diagonal(neg2()),
            PairAction::diagonal(e8_root_involution(&[], true)),
        ),
        expected_theta: (0, 0, 0),
        geometric: true,
        warning: None,
    }
}

/// The built-in triples. The `t{r}a{a}d{d}` entries together with
/// `reference` realize all sixteen invariant triples possible on the halved
/// fixed lattice of `tau`; `minus-identity` and `minus-tau` are valid
/// involution pairs whose fixed lattices are not both hyperbolic and carry
/// `geometric: false`; `identity` is kept only to exercise rejection paths.
///
/// Most entries leave the first `U` pointwise fixed, which composes with
/// `tau` to an involution with invariants `(10, 10, 0)` and empty fixed
/// point set; the induced action on the halved fixed lattice of `tau` is
/// then read off directly from the diagonal pair actions.
pub fn standard_triples() -> Vec<CatalogEntry> {
    let diag = |u1: UInvolution, c2: IntMatrix, nodes: &[usize], negate: bool| {
        SigmaSpec::per_summand(
            u1,
            PairAction::diagonal(c2),
            PairAction::diagonal(e8_root_involution(nodes, negate)),
        )
    };
    let mut entries = vec![reference_entry()];
    let themed: Vec<(&'static str, &'static str, SigmaSpec, (usize, usize, u8))> = vec![
        (
            "t1a1d1",
            "fixed first U, negated swap on the U pair, negated E8 pair",
            diag(UInvolution::Id, negswap2(), &[], true),
            (1, 1, 1),
        ),
        (
            "t2a2d1",
            "fixed first U, negated U pair, negated reflections in two orthogonal roots",
            diag(UInvolution::Id, neg2(), &[1, 2], true),
            (2, 2, 1),
        ),
        (
            "t3a3d1",
            "fixed first U, negated U pair, negated reflections in three orthogonal roots",
            diag(UInvolution::Id, neg2(), &[1, 2, 5], true),
            (3, 3, 1),
        ),
        (
            "t4a2d0",
            "fixed first U, negated U pair, reflections in four roots spanning half a D4",
            SigmaSpec::per_summand(
                UInvolution::Id,
                PairAction::diagonal(neg2()),
                PairAction::diagonal(e8_roots_involution(&d4_root_quadruple(), false)),
            ),
            (4, 2, 0),
        ),
        (
            "t4a4d1",
            "fixed first U, negated U pair, negated reflections in four orthogonal roots",
            diag(UInvolution::Id, neg2(), &[1, 2, 5, 7], true),
            (4, 4, 1),
        ),
        (
            "t5a3d1",
            "fixed first U, negated U pair, reflections in three orthogonal roots",
            diag(UInvolution::Id, neg2(), &[1, 2, 5], false),
            (5, 3, 1),
        ),
        (
            "t5a5d1",
            "fixed first U, negated swap on the U pair, negated reflections in four roots",
            diag(UInvolution::Id, negswap2(), &[1, 2, 5, 7], true),
            (5, 5, 1),
        ),
        (
            "t6a2d1",
            "fixed first U, negated U pair, reflections in two orthogonal roots",
            diag(UInvolution::Id, neg2(), &[1, 2], false),
            (6, 2, 1),
        ),
        (
            "t6a4d1",
            "fixed first U, negated swap on the U pair, reflections in three roots",
            diag(UInvolution::Id, negswap2(), &[1, 2, 5], false),
            (6, 4, 1),
        ),
        (
            "t7a1d1",
            "fixed first U, negated U pair, reflection in one root",
            diag(UInvolution::Id, neg2(), &[1], false),
            (7, 1, 1),
        ),
        (
            "t7a3d1",
            "fixed first U, negated swap on the U pair, reflections in two roots",
            diag(UInvolution::Id, negswap2(), &[1, 2], false),
            (7, 3, 1),
        ),
        (
            "t8a0d0",
            "swap on the first U, negated U pair, fixed E8 pair",
            diag(UInvolution::Swap, neg2(), &[], false),
            (8, 0, 0),
        ),
        (
            "t8a2d0",
            "negated first U, antidiagonal U-E8 mixing action with a D8 fixed lattice",
            SigmaSpec {
                u1: UInvolution::Neg,
                pairs: PairSpec::Copy(PairAction::antidiagonal(d8_mixing_involution())),
            },
            (8, 2, 0),
        ),
        (
            "t8a2d1",
            "fixed first U, negated swap on the U pair, reflection in one root",
            diag(UInvolution::Id, negswap2(), &[1], false),
            (8, 2, 1),
        ),
        (
            "t9a1d1",
            "fixed first U, negated swap on the U pair, fixed E8 pair",
            diag(UInvolution::Id, negswap2(), &[], false),
            (9, 1, 1),
        ),
    ];
    for (name, summary, spec, theta) in themed {
        entries.push(CatalogEntry {
            name,
            summary,
            spec,
            expected_theta: theta,
            geometric: true,
            warning: None,
        });
    }
    entries.push(CatalogEntry {
        name: "mirror-reference",
        summary: "negation on the first U, antidiagonal negation on the pairs",
        spec: SigmaSpec::per_summand(
            UInvolution::Neg,
            PairAction::antidiagonal(neg2()),
            PairAction::antidiagonal(e8_root_involution(&[], true)),
        ),
        expected_theta: (0, 0, 0),
        geometric: true,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "mirror-odd",
        summary: "negation on the first U, antidiagonal pair actions with one reflection",
        spec: SigmaSpec::per_summand(
            UInvolution::Neg,
            PairAction::antidiagonal(neg2()),
            PairAction::antidiagonal(e8_root_involution(&[1], true)),
        ),
        expected_theta: (1, 1, 1),
        geometric: true,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "id-u1",
        summary: "identity on the first U, negated reflection in one root",
        spec: diag(UInvolution::Id, neg2(), &[1], true),
        expected_theta: (1, 1, 1),
        geometric: true,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "antidiag-e8",
        summary: "swap on the first U, antidiagonal identity action on the E8 pair",
        spec: SigmaSpec::per_summand(
            UInvolution::Swap,
            PairAction::diagonal(neg2()),
            PairAction::antidiagonal(e8_root_involution(&[], false)),
        ),
        expected_theta: (8, 0, 0),
        geometric: true,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "minus-identity",
        summary: "global negation; fixed lattice of the composition is not hyperbolic",
        spec: SigmaSpec::per_summand(
            UInvolution::Neg,
            PairAction::diagonal(neg2()),
            PairAction::diagonal(e8_root_involution(&[], true)),
        ),
        expected_theta: (0, 0, 0),
        geometric: false,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "minus-tau",
        summary: "negated tau; its own fixed lattice is not hyperbolic",
        spec: SigmaSpec::per_summand(
            UInvolution::Id,
            PairAction::antidiagonal(neg2()),
            PairAction::antidiagonal(e8_root_involution(&[], true)),
        ),
        expected_theta: (0, 0, 0),
        geometric: false,
        warning: None,
    });
    entries.push(CatalogEntry {
        name: "identity",
        summary: "the identity everywhere; not an involution pairing with tau",
        spec: SigmaSpec::per_summand(
            UInvolution::Id,
            PairAction::diagonal(IntMatrix::identity(2)),
            PairAction::diagonal(e8_root_involution(&[], false)),
        ),
        expected_theta: (10, 0, 0),
        geometric: false,
        warning: Some("rejected by the analysis; kept for negative tests"),
    });
    entries
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    standard_triples().into_iter().find(|e| e.name == name)
}
