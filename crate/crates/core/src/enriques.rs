//! Joint invariants of a commuting pair of involutions on the K3 lattice:
//! an Enriques involution `tau` and a lift `sigma` of a real structure on
//! the quotient surface.
//!
//! [`analyze`] computes the full invariant set of such a pair: the
//! restricted involution on the halved `tau`-fixed lattice, the four joint
//! eigenlattices and their glue groups, the defects `alpha`, `gamma` and the
//! lifted parity, the mod-2 picture with its distinguished degree-two class,
//! and, when both lifts have hyperbolic fixed lattices, the possible
//! topological types of the real locus with their Brauer-group dimensions.
//! Every derived quantity is recomputed along an independent route where one
//! exists; a disagreement surfaces as [`Error::Inconsistency`].

use num::{Integer as _, One, Zero};
use serde::Serialize;

use crate::disc::DiscriminantGroup;
use crate::error::Error;
use crate::f2::{F2Matrix, Subspace};
use crate::fqmod::{TwoElementaryForm, TwoTorsionLayer};
use crate::invol::{
    fixed_set_topology, joint_eigenlattice, FixedSetTopology, Involution, InvolutionInvariants,
};
use crate::lattice::{glue_group, GlueGroup, Lattice, Sublattice};
use crate::linalg::{Int, IntMatrix, Rat};

/// The sixteen invariant triples `(r, a, delta)` an involution of the halved
/// `tau`-fixed lattice can have when the pair comes from a real Enriques
/// surface.
pub const THETA_TABLE: [(usize, usize, u8); 16] = [
    (0, 0, 0),
    (1, 1, 1),
    (2, 2, 1),
    (3, 3, 1),
    (4, 2, 0),
    (4, 4, 1),
    (5, 3, 1),
    (5, 5, 1),
    (6, 2, 1),
    (6, 4, 1),
    (7, 1, 1),
    (7, 3, 1),
    (8, 0, 0),
    (8, 2, 0),
    (8, 2, 1),
    (9, 1, 1),
];

/// One admissible topological type of the real locus together with the
/// resulting Brauer-group data.
///
/// An empty real locus is recorded as the all-zero split with no Brauer
/// estimate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    /// Torsion contribution to the first Betti number, 0 or 1.
    pub beta: u8,
    /// Total mod-2 first Betti number of the real locus.
    pub b: usize,
    /// Number of non-orientable components.
    pub s_nor: usize,
    /// Number of orientable components.
    pub s_or: usize,
    /// Total number of components.
    pub components: usize,
    /// `Some(1)` when the Brauer dimension is pinned to `b + 1`.
    pub epsilon: Option<u8>,
    /// Bounds on the dimension of the 2-torsion Brauer group; absent when
    /// the real locus is empty.
    pub brauer_min: Option<usize>,
    pub brauer_max: Option<usize>,
}

/// Real-locus data; present only when both lifts have hyperbolic fixed
/// lattices.
#[derive(Clone, Debug, Serialize)]
pub struct TopologySection {
    pub sigma_fixed_set: FixedSetTopology,
    pub tau_sigma_fixed_set: FixedSetTopology,
    /// Components of the sigma locus plus components of the tau.sigma locus.
    pub component_sum: usize,
    /// How many of the two loci are nonempty.
    pub positive_count: usize,
    /// True when both loci are empty.
    pub empty_real_locus: bool,
    pub outcomes: Vec<Outcome>,
}

/// Everything [`analyze`] computes about a commuting pair.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub lattice: String,
    pub tau: InvolutionInvariants,
    pub sigma: InvolutionInvariants,
    pub tau_sigma: InvolutionInvariants,
    /// Invariants of sigma restricted to the halved tau-fixed lattice.
    pub theta: InvolutionInvariants,
    pub theta_in_table: bool,
    pub sigma_hyperbolic: bool,
    pub tau_sigma_hyperbolic: bool,
    pub geometric: bool,
    /// Ranks of the joint eigenlattices; the first sign is for tau.
    pub rank_fix_fix: usize,
    pub rank_fix_anti: usize,
    pub rank_anti_fix: usize,
    pub rank_anti_anti: usize,
    /// Rank of the glue group over the (+,+) eigenlattice.
    pub h_plus: usize,
    /// Rank of the glue group over the (+,-) eigenlattice.
    pub h_minus: usize,
    /// Rank of the part of the second glue image pairing trivially with the
    /// first; equals the rank of the glue between the (+,-) and (-,+)
    /// eigenlattices.
    pub c: usize,
    /// `h_minus - c`, between 0 and 2.
    pub gamma: usize,
    /// `a(sigma) - h_plus - h_minus`, 0 or 1.
    pub alpha: u8,
    /// Parity of the characteristic element against the glue images; 0 when
    /// the transported forms stay even.
    pub delta_pm: u8,
    /// Whether the distinguished degree-two class pairs nontrivially with
    /// the sigma-invariant part of Anti(tau).
    pub f_nonzero: bool,
    /// Dimension of the sigma-fixed part of the mod-2 image of Anti(tau).
    pub anti_image_fixed_dim: usize,
    /// Dimension of the sigma-fixed part of the mod-2 image of Fix(tau).
    pub inv_image_fixed_dim: usize,
    /// Sigma-fixed dimension of `L/2L` modulo the distinguished subspace;
    /// equals the fixed dimension of the torsion-free quotient cohomology.
    pub quotient_fixed_dim: usize,
    /// Fixed dimension on the Picard group of the quotient, `11 - r(theta)`.
    pub picard_fixed_dim: usize,
    /// Torsion contribution to the first Betti number when determined.
    pub beta: Option<u8>,
    /// Possible values of the total mod-2 first Betti number of the real
    /// locus.
    pub b_candidates: Vec<usize>,
    pub topology: Option<TopologySection>,
    /// How many cross-checked identities were confirmed along the way.
    pub identities_verified: usize,
}

fn fail(what: impl Into<String>) -> Error {
    Error::Inconsistency(what.into())
}

fn check(cond: bool, what: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(fail(what))
    }
}

fn check_eq(what: &str, got: i64, want: i64) -> Result<(), Error> {
    if got == want {
        Ok(())
    } else {
        Err(fail(format!("{what}: {got} != {want}")))
    }
}

/// Counts the identities that were checked and held.
struct Checks {
    passed: usize,
}

impl Checks {
    fn new() -> Self {
        Checks { passed: 0 }
    }

    fn check(&mut self, cond: bool, what: &str) -> Result<(), Error> {
        check(cond, what)?;
        self.passed += 1;
        Ok(())
    }

    fn check_eq(&mut self, what: &str, got: i64, want: i64) -> Result<(), Error> {
        check_eq(what, got, want)?;
        self.passed += 1;
        Ok(())
    }
}

fn log2_exact(n: &Int, what: &str) -> Result<usize, Error> {
    let two = Int::from(2);
    let mut m = n.clone();
    let mut k = 0usize;
    while m > Int::one() {
        let (q, r) = m.div_mod_floor(&two);
        if !r.is_zero() {
            return Err(fail(format!("{what}: {n} is not a power of two")));
        }
        m = q;
        k += 1;
    }
    if m != Int::one() {
        return Err(fail(format!("{what}: {n} is not a power of two")));
    }
    Ok(k)
}

fn int_vec_mod2(v: &[Int]) -> Vec<u8> {
    let two = Int::from(2);
    v.iter()
        .map(|x| u8::from(!x.mod_floor(&two).is_zero()))
        .collect()
}

fn span_of_columns(m: &IntMatrix, ambient: usize) -> Subspace {
    let cols: Vec<Vec<u8>> = (0..m.cols()).map(|j| int_vec_mod2(&m.column(j))).collect();
    Subspace::from_spanning(&cols, ambient)
}

fn kernel_subspace(m: &F2Matrix) -> Subspace {
    let k = m.kernel();
    let rows: Vec<Vec<u8>> = (0..k.rows()).map(|i| k.row(i).to_vec()).collect();
    Subspace::from_spanning(&rows, m.cols())
}

fn two_elementary_dim(g: &GlueGroup, what: &str) -> Result<usize, Error> {
    check(
        g.is_two_elementary(),
        &format!("{what} must be 2-elementary"),
    )?;
    Ok(g.divisors().len())
}

fn divisor_profile(d: &DiscriminantGroup, what: &str) -> Result<(usize, usize), Error> {
    let two = Int::from(2);
    let four = Int::from(4);
    let mut twos = 0usize;
    let mut fours = 0usize;
    for div in d.divisors() {
        if *div == two {
            twos += 1;
        } else if *div == four {
            fours += 1;
        } else {
            return Err(fail(format!("{what}: cyclic factor of order {div}")));
        }
    }
    Ok((twos, fours))
}

/// Whether `x^2/2` is even for every vector of the given Gram matrix.
fn half_square_even(g: &IntMatrix) -> bool {
    let two = Int::from(2);
    let four = Int::from(4);
    for i in 0..g.rows() {
        if !g[(i, i)].mod_floor(&four).is_zero() {
            return false;
        }
        for j in 0..i {
            if !g[(i, j)].mod_floor(&two).is_zero() {
                return false;
            }
        }
    }
    true
}

fn half_square_mod2(gram: &IntMatrix, v: &[Int]) -> Result<u8, Error> {
    let mut acc = Int::zero();
    for i in 0..gram.rows() {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..gram.cols() {
            acc += &v[i] * &gram[(i, j)] * &v[j];
        }
    }
    let rem = acc.mod_floor(&Int::from(4));
    if rem == Int::zero() {
        Ok(0)
    } else if rem == Int::from(2) {
        Ok(1)
    } else {
        Err(fail("square of a lattice vector must be even"))
    }
}

/// Rewrites a sublattice of `L` as a sublattice of a primitive `within`
/// containing it, keeping basis vectors and hence the induced form.
fn reexpress(
    sub: &Sublattice,
    within: &Sublattice,
    ambient: &Lattice,
    what: &str,
) -> Result<Sublattice, Error> {
    let coords = within
        .coords_of_columns(sub.basis())
        .map_err(|_| fail(format!("{what} is not contained in the expected sublattice")))?;
    let re = Sublattice::from_columns(ambient, coords)?;
    check(
        re.gram() == sub.gram(),
        &format!("{what}: induced form changed under re-expression"),
    )?;
    Ok(re)
}

/// Parity of the characteristic element `v` against one glue image: 1 when
/// `v` lies outside the image, otherwise 0 or 1 according to whether the
/// matched element on the eigenlattice side is characteristic for the
/// two-torsion pairing there.
fn side_parity(
    q_form: &TwoElementaryForm,
    v: &[u8],
    spanning: &[Vec<Rat>],
    partners: &[Vec<Rat>],
    partner_disc: &DiscriminantGroup,
    partner_layer: &TwoTorsionLayer,
) -> Result<u8, Error> {
    let n = q_form.dim();
    let mut rows = vec![vec![0u8; spanning.len()]; n];
    for (j, e) in spanning.iter().enumerate() {
        let coords = q_form.coords(e)?;
        for (i, row) in rows.iter_mut().enumerate() {
            row[j] = coords[i];
        }
    }
    let mat = F2Matrix::new(rows, spanning.len());
    let Some(eps) = mat.solve(v) else {
        return Ok(1);
    };
    let mut x = partner_disc.zero_element();
    for (e, p) in eps.iter().zip(partners) {
        if *e == 1 {
            x = partner_disc.add(&x, p);
        }
    }
    Ok(u8::from(!partner_layer.is_characteristic(&x)?))
}

fn validate_triple(l: &Lattice, tau: &Involution, sigma: &Involution) -> Result<(), Error> {
    if sigma.lattice() != l {
        return Err(Error::InvalidTriple(
            "tau and sigma act on different lattices".into(),
        ));
    }
    if l.rank() != 22 || !l.is_even() || !l.is_unimodular() {
        return Err(Error::InvalidTriple(
            "ambient lattice must be even unimodular of rank 22".into(),
        ));
    }
    if l.signature()? != (3, 19, 0) {
        return Err(Error::InvalidTriple(
            "ambient lattice must have signature (3, 19)".into(),
        ));
    }
    if !tau.commutes_with(sigma) {
        return Err(Error::InvalidTriple("involutions do not commute".into()));
    }
    if sigma.is_identity() {
        return Err(Error::InvalidTriple("sigma must not be the identity".into()));
    }
    if sigma.matrix() == tau.matrix() {
        return Err(Error::InvalidTriple("sigma must differ from tau".into()));
    }
    Ok(())
}

/// Validates the pair and computes every joint invariant, recomputing each
/// derived identity along an independent route.
pub fn analyze(tau: &Involution, sigma: &Involution) -> Result<AnalysisReport, Error> {
    let l = tau.lattice();
    validate_triple(l, tau, sigma)?;
    let n = l.rank();
    let mut ck = Checks::new();

    let tau_inv = tau.invariants()?;
    if tau_inv.as_tuple() != (10, 10, 0) {
        return Err(Error::InvalidTriple(format!(
            "tau has invariants {tau_inv}, expected (10,10,0)"
        )));
    }
    let tau_fixed = tau.fixed_sublattice();
    let tau_anti = tau.anti_sublattice();
    let tau_fixed_lat = tau_fixed.as_lattice("Fix(tau)");
    let halved = tau_fixed_lat.half().map_err(|_| {
        Error::InvalidTriple("the form on Fix(tau) is not twice an even form".into())
    })?;
    if !halved.is_even() || !halved.is_unimodular() {
        return Err(Error::InvalidTriple(
            "Fix(tau)(1/2) must be even unimodular".into(),
        ));
    }

    let theta_mat = sigma.restrict_to(&tau_fixed)?;
    let theta_invol = Involution::new(&halved, theta_mat).map_err(|e| {
        fail(format!(
            "sigma does not restrict to an involutive isometry of Fix(tau): {e}"
        ))
    })?;
    let theta = theta_invol.invariants()?;
    let theta_in_table = THETA_TABLE.contains(&theta.as_tuple());
    let rt = theta.r as i64;
    let at = theta.a as i64;

    let tau_sigma = tau.compose(sigma)?;
    let sigma_inv = sigma.invariants()?;
    let ts_inv = tau_sigma.invariants()?;
    let rs = sigma_inv.r as i64;
    let a_sigma = sigma_inv.a as i64;

    let one = Int::one();
    let m1 = -Int::one();
    let ff = joint_eigenlattice(tau, one.clone(), sigma, one.clone())?;
    let fa = joint_eigenlattice(tau, one.clone(), sigma, m1.clone())?;
    let af = joint_eigenlattice(tau, m1.clone(), sigma, one.clone())?;
    let aa = joint_eigenlattice(tau, m1.clone(), sigma, m1)?;
    ck.check_eq("rank of the (+,+) eigenlattice", ff.rank() as i64, rt)?;
    ck.check_eq("rank of the (+,-) eigenlattice", fa.rank() as i64, 10 - rt)?;
    ck.check_eq("rank of the (-,+) eigenlattice", af.rank() as i64, rs - rt)?;
    ck.check_eq(
        "rank of the (-,-) eigenlattice",
        aa.rank() as i64,
        12 - rs + rt,
    )?;

    let sigma_fixed = sigma.fixed_sublattice();
    let sigma_anti = sigma.anti_sublattice();
    let sigma_hyperbolic = sigma_fixed.as_lattice("Fix(sigma)").is_hyperbolic()?;
    let tau_sigma_hyperbolic = tau_sigma
        .fixed_sublattice()
        .as_lattice("Fix(tau.sigma)")
        .is_hyperbolic()?;
    let geometric = sigma_hyperbolic && tau_sigma_hyperbolic;
    if geometric {
        ck.check(
            theta_in_table,
            "restricted invariants fall outside the classification table",
        )?;
        ck.check(
            tau_fixed_lat.is_hyperbolic()?,
            "Fix(tau) must be hyperbolic",
        )?;
    }

    let disc_ff = ff.discriminant_form()?;
    let disc_fa = fa.discriminant_form()?;
    let disc_af = af.discriminant_form()?;
    let disc_aa = aa.discriminant_form()?;

    let gl_sigma = glue_group(&sigma_fixed, &sigma_anti)?;
    let q_form = TwoElementaryForm::new(sigma_fixed.discriminant_form()?)?;
    ck.check_eq(
        "length of the discriminant of Fix(sigma)",
        q_form.dim() as i64,
        a_sigma,
    )?;

    // Glue of the (+,+) eigenlattice against Anti(sigma), inside the
    // orthogonal complement of the (-,+) eigenlattice.
    let m_plus = af.orthogonal_complement();
    let m_plus_lat = m_plus.as_lattice("Mplus");
    let ff_plus = reexpress(&ff, &m_plus, &m_plus_lat, "(+,+) eigenlattice")?;
    let anti_plus = reexpress(&sigma_anti, &m_plus, &m_plus_lat, "Anti(sigma)")?;
    let gamma_plus = glue_group(&ff_plus, &anti_plus)?;
    let h_plus = two_elementary_dim(&gamma_plus, "glue group over the (+,+) eigenlattice")?;
    ck.check(
        h_plus <= theta.r,
        "glue rank over the (+,+) eigenlattice must stay within its two-torsion",
    )?;

    // Transport the second projection through sigma's own glue graph into
    // the discriminant of Fix(sigma), checking that the transport preserves
    // the quadratic form.
    let mut pulled: Vec<Vec<Rat>> = Vec::with_capacity(gamma_plus.gens().len());
    for (x1, y) in gamma_plus.gens() {
        let partner = gl_sigma.partner_of_second(y)?;
        let q_left = gamma_plus.a1().q(x1)?;
        let q_right = q_form.disc().q(&partner)?;
        ck.check(
            q_left == q_right,
            "graph transport must preserve the quadratic form",
        )?;
        pulled.push(partner);
    }
    let h_plus_space = q_form.subspace_from_elements(&pulled)?;
    ck.check_eq(
        "rank of the transported glue image",
        h_plus_space.dim() as i64,
        h_plus as i64,
    )?;

    // Glue of the (+,-) eigenlattice against Fix(sigma), inside the
    // orthogonal complement of the (-,-) eigenlattice.
    let m_minus = aa.orthogonal_complement();
    let m_minus_lat = m_minus.as_lattice("Mminus");
    let fa_minus = reexpress(&fa, &m_minus, &m_minus_lat, "(+,-) eigenlattice")?;
    let fix_minus = reexpress(&sigma_fixed, &m_minus, &m_minus_lat, "Fix(sigma)")?;
    let gamma_minus = glue_group(&fa_minus, &fix_minus)?;
    let h_minus = two_elementary_dim(&gamma_minus, "glue group over the (+,-) eigenlattice")?;
    ck.check(
        h_minus <= 10 - theta.r,
        "glue rank over the (+,-) eigenlattice must stay within its two-torsion",
    )?;
    let h_minus_elems: Vec<Vec<Rat>> = gamma_minus.gens().iter().map(|(_, y)| y.clone()).collect();
    let h_minus_space = q_form.subspace_from_elements(&h_minus_elems)?;
    ck.check_eq(
        "rank of the second glue image",
        h_minus_space.dim() as i64,
        h_minus as i64,
    )?;

    let gamma_pm = h_plus_space.intersection(&h_minus_space);
    ck.check_eq(
        "dimension of the common glue subgroup",
        gamma_pm.dim() as i64,
        at,
    )?;
    ck.check(
        q_form.is_isotropic(&gamma_pm)?,
        "common glue subgroup must be isotropic",
    )?;
    let h_sum = h_plus_space.sum(&h_minus_space);
    let perp_sum = q_form.orthogonal_complement(&h_sum)?;
    ck.check(
        perp_sum.contains_subspace(&gamma_pm),
        "common glue subgroup must pair trivially with both glue images",
    )?;
    let perp_plus = q_form.orthogonal_complement(&h_plus_space)?;
    let c = perp_plus.intersection(&h_minus_space).dim();
    let gamma = h_minus - c;
    ck.check(gamma <= 2, "gamma must be at most two")?;

    // Independent recomputation of c: glue between the (+,-) and (-,+)
    // eigenlattices inside the complement of the other two.
    let mut outer_cols = Vec::new();
    for j in 0..ff.rank() {
        outer_cols.push(ff.basis().column(j));
    }
    for j in 0..aa.rank() {
        outer_cols.push(aa.basis().column(j));
    }
    let m_cross = if outer_cols.is_empty() {
        l.full_sublattice()
    } else {
        Sublattice::from_columns(l, IntMatrix::from_columns(n, &outer_cols))?
            .orthogonal_complement()
    };
    let m_cross_lat = m_cross.as_lattice("Mcross");
    let fa_cross = reexpress(&fa, &m_cross, &m_cross_lat, "(+,-) eigenlattice")?;
    let af_cross = reexpress(&af, &m_cross, &m_cross_lat, "(-,+) eigenlattice")?;
    let gamma_cross = glue_group(&fa_cross, &af_cross)?;
    let c_indep = two_elementary_dim(&gamma_cross, "transverse glue group")?;
    ck.check_eq("two computations of c", c_indep as i64, c as i64)?;

    let hp = h_plus as i64;
    let hm = h_minus as i64;
    let ci = c as i64;
    ck.check(at <= ci, "common glue subgroup must fit inside the overlap")?;

    ck.check_eq(
        "discriminant order of the (+,+) eigenlattice",
        log2_exact(disc_ff.order(), "order of A(+,+)")? as i64,
        rt + at,
    )?;
    ck.check_eq(
        "discriminant order of the (+,-) eigenlattice",
        log2_exact(disc_fa.order(), "order of A(+,-)")? as i64,
        10 - rt + at,
    )?;
    ck.check_eq(
        "discriminant order of the (-,+) eigenlattice",
        log2_exact(disc_af.order(), "order of A(-,+)")? as i64,
        rt + at + a_sigma - 2 * hp,
    )?;
    ck.check_eq(
        "discriminant order of the (-,-) eigenlattice",
        log2_exact(disc_aa.order(), "order of A(-,-)")? as i64,
        10 - rt + at + a_sigma - 2 * hm,
    )?;
    let (ff_twos, ff_fours) = divisor_profile(&disc_ff, "discriminant of the (+,+) eigenlattice")?;
    ck.check_eq("order-four factors in A(+,+)", ff_fours as i64, at)?;
    ck.check_eq("order-two factors in A(+,+)", ff_twos as i64, rt - at)?;
    let (fa_twos, fa_fours) = divisor_profile(&disc_fa, "discriminant of the (+,-) eigenlattice")?;
    ck.check_eq("order-four factors in A(+,-)", fa_fours as i64, at)?;
    ck.check_eq("order-two factors in A(+,-)", fa_twos as i64, 10 - rt - at)?;

    // Glue inside Fix(tau) and the two-torsion layers of the discriminants.
    let ff_tau = reexpress(&ff, &tau_fixed, &tau_fixed_lat, "(+,+) eigenlattice")?;
    let fa_tau = reexpress(&fa, &tau_fixed, &tau_fixed_lat, "(+,-) eigenlattice")?;
    let gamma_12 = glue_group(&ff_tau, &fa_tau)?;
    ck.check_eq(
        "rank of the glue inside Fix(tau)",
        two_elementary_dim(&gamma_12, "glue inside Fix(tau)")? as i64,
        at,
    )?;

    let layer_ff = TwoTorsionLayer::of(&disc_ff);
    let layer_fa = TwoTorsionLayer::of(&disc_fa);
    ck.check(
        layer_ff.b_diag_vanishes()?,
        "self-pairing must vanish on the two-torsion layer of A(+,+)",
    )?;
    ck.check(
        layer_fa.b_diag_vanishes()?,
        "self-pairing must vanish on the two-torsion layer of A(+,-)",
    )?;
    let rad_ff = layer_ff.radical()?;
    let rad_fa = layer_fa.radical()?;
    ck.check_eq("radical dimension in the (+,+) layer", rad_ff.dim() as i64, at)?;
    ck.check_eq("radical dimension in the (+,-) layer", rad_fa.dim() as i64, at)?;
    ck.check(
        rad_ff == layer_ff.double_subgroup()?,
        "radical must equal the doubled subgroup in A(+,+)",
    )?;
    ck.check(
        rad_fa == layer_fa.double_subgroup()?,
        "radical must equal the doubled subgroup in A(+,-)",
    )?;
    let mut p1_span = Vec::new();
    let mut p2_span = Vec::new();
    for (x1, x2) in gamma_12.gens() {
        p1_span.push(layer_ff.coords(x1)?);
        p2_span.push(layer_fa.coords(x2)?);
    }
    ck.check(
        Subspace::from_spanning(&p1_span, layer_ff.dim()) == rad_ff,
        "first projection of the glue inside Fix(tau) must fill the radical",
    )?;
    ck.check(
        Subspace::from_spanning(&p2_span, layer_fa.dim()) == rad_fa,
        "second projection of the glue inside Fix(tau) must fill the radical",
    )?;
    let even_theta = theta.delta == 0;
    ck.check(
        layer_ff.q_vanishes_on(&rad_ff)? == even_theta,
        "parity of the restricted involution against q on the (+,+) radical",
    )?;
    ck.check(
        layer_fa.q_vanishes_on(&rad_fa)? == even_theta,
        "parity of the restricted involution against q on the (+,-) radical",
    )?;
    ck.check(
        q_form.q_vanishes_on(&gamma_pm)? == even_theta,
        "parity of the restricted involution against q on the common glue subgroup",
    )?;

    // Rank, length and parity identities for the composed involution.
    let r_ts = ts_inv.r as i64;
    let a_ts = ts_inv.a as i64;
    ck.check_eq("rank identity for the composed involution", rs + r_ts, 12 + 2 * rt)?;
    ck.check_eq(
        "length identity for the composed involution",
        a_ts - a_sigma,
        10 + 2 * at - 2 * hp - 2 * ci,
    )?;
    ck.check_eq(
        "parity identity for the composed involution",
        ((sigma_inv.delta + ts_inv.delta) % 2) as i64,
        theta.delta as i64,
    )?;

    let alpha_i = a_sigma - hp - hm;
    ck.check(
        alpha_i == 0 || alpha_i == 1,
        "alpha must be zero or one",
    )?;
    let alpha = alpha_i as u8;
    ck.check(
        rs - a_sigma >= 2 * rt - 2 * hp,
        "rank-minus-length bound for Fix(sigma)",
    )?;
    ck.check(
        rs + a_sigma <= 2 * hm + 2 * rt + 2,
        "rank-plus-length bound for Fix(sigma)",
    )?;

    // The lifted parity, along three independent routes: membership of the
    // characteristic element in the common glue subgroup; the characteristic
    // condition transported to either eigenlattice side; membership of the
    // mod-2 characteristic class of sigma in both eigenlattice images.
    let v = q_form.characteristic_element()?;
    let v_zero = v.iter().all(|&x| x == 0);
    ck.check(
        v_zero == (sigma_inv.delta == 0),
        "characteristic element must vanish exactly for even type",
    )?;
    let d_common = u8::from(!gamma_pm.contains(&v));
    let plus_partners: Vec<Vec<Rat>> = gamma_plus.gens().iter().map(|(x1, _)| x1.clone()).collect();
    let d_plus = side_parity(&q_form, &v, &pulled, &plus_partners, &disc_ff, &layer_ff)?;
    let minus_partners: Vec<Vec<Rat>> =
        gamma_minus.gens().iter().map(|(w, _)| w.clone()).collect();
    let d_minus = side_parity(
        &q_form,
        &v,
        &h_minus_elems,
        &minus_partners,
        &disc_fa,
        &layer_fa,
    )?;
    ck.check(d_plus == d_minus, "the two side parities must agree")?;
    ck.check(
        d_plus == d_common,
        "side parity must match membership in the common glue subgroup",
    )?;
    let v_class = sigma.characteristic_class()?;
    let span_ff2 = span_of_columns(ff.basis(), n);
    let span_fa2 = span_of_columns(fa.basis(), n);
    let d_mod2 = u8::from(!(span_ff2.contains(&v_class) && span_fa2.contains(&v_class)));
    ck.check(
        d_mod2 == d_common,
        "mod-2 membership of the characteristic class must match the glue test",
    )?;
    let delta_pm = d_common;
    if sigma_inv.delta == 0 {
        ck.check(delta_pm == 0, "even sigma forces an even lifted parity")?;
    }

    // The mod-2 picture.
    let sig2 = F2Matrix::from_int_matrix(sigma.matrix());
    let tau2 = F2Matrix::from_int_matrix(tau.matrix());
    let id2 = F2Matrix::identity(n);
    let shifted_sigma = sig2.add(&id2);
    let shifted_tau = tau2.add(&id2);
    let ker_sigma = kernel_subspace(&shifted_sigma);
    let ker_tau = kernel_subspace(&shifted_tau);

    let span_anti = span_of_columns(tau_anti.basis(), n);
    let span_inv = span_of_columns(tau_fixed.basis(), n);
    ck.check_eq("mod-2 image of Anti(tau)", span_anti.dim() as i64, 12)?;
    ck.check_eq("mod-2 image of Fix(tau)", span_inv.dim() as i64, 10)?;
    ck.check(
        span_anti == ker_tau,
        "mod-2 fixed space of tau must be the image of Anti(tau)",
    )?;
    ck.check(
        span_anti.contains_subspace(&span_inv),
        "image of Fix(tau) must lie inside the image of Anti(tau)",
    )?;

    let fixed_anti = span_anti.intersection(&ker_sigma);
    let fixed_inv = span_inv.intersection(&ker_sigma);
    ck.check_eq(
        "sigma-fixed part of the image of Anti(tau)",
        fixed_anti.dim() as i64,
        12 - at - a_sigma + hp + hm,
    )?;
    ck.check_eq(
        "sigma-fixed part of the image of Fix(tau)",
        fixed_inv.dim() as i64,
        10 - at,
    )?;
    let span_af2 = span_of_columns(af.basis(), n);
    let span_aa2 = span_of_columns(aa.basis(), n);
    ck.check(
        span_af2.sum(&span_aa2) == fixed_anti,
        "eigenlattice images must fill the sigma-fixed part of the Anti(tau) image",
    )?;
    ck.check(
        span_ff2.sum(&span_fa2) == fixed_inv,
        "eigenlattice images must fill the sigma-fixed part of the Fix(tau) image",
    )?;

    // The distinguished class: the unique nonzero class of the two-dimensional
    // quotient of the two images on which half the square is odd.
    let mut reps: Vec<Vec<Int>> = Vec::new();
    let mut accum = span_inv.clone();
    for j in 0..tau_anti.rank() {
        let col = tau_anti.basis().column(j);
        let v2 = int_vec_mod2(&col);
        if !accum.contains(&v2) {
            accum = accum.sum(&Subspace::from_spanning(&[v2], n));
            reps.push(col);
        }
    }
    ck.check_eq("codimension of the invariant image", reps.len() as i64, 2)?;
    ck.check(
        accum == span_anti,
        "coset representatives must fill the image of Anti(tau)",
    )?;
    let w1 = reps[0].clone();
    let w2 = reps[1].clone();
    let w12: Vec<Int> = w1.iter().zip(&w2).map(|(a, b)| a + b).collect();
    let mut f_rep: Option<Vec<Int>> = None;
    let mut odd_count = 0i64;
    for cand in [&w1, &w2, &w12] {
        if half_square_mod2(l.gram(), cand)? == 1 {
            odd_count += 1;
            f_rep = Some(cand.clone());
        }
    }
    ck.check_eq("classes with odd half-square", odd_count, 1)?;
    let f_rep = f_rep.expect("exactly one odd class");
    let f2_f = int_vec_mod2(&f_rep);
    ck.check(
        span_inv.contains(&shifted_sigma.mul_vec(&f2_f)),
        "distinguished class must be sigma-invariant",
    )?;
    let flag = span_inv.sum(&Subspace::from_spanning(&[f2_f.clone()], n));
    ck.check_eq("dimension of the distinguished subspace", flag.dim() as i64, 11)?;
    for bv in flag.basis_vectors() {
        ck.check(
            flag.contains(&sig2.mul_vec(&bv)),
            "distinguished subspace must be sigma-stable",
        )?;
    }
    // Evaluation of the distinguished class on the sigma-invariant part of
    // Anti(tau): pair its representative against a basis of the two torsion
    // eigenlattices.
    let two = Int::from(2);
    let mut f_nonzero = false;
    for sub in [&af, &aa] {
        for j in 0..sub.rank() {
            let col = sub.basis().column(j);
            if !(l.pairing(&f_rep, &col) % &two).is_zero() {
                f_nonzero = true;
            }
        }
    }
    ck.check(
        f_nonzero == !(alpha == 1 && delta_pm == 1),
        "evaluation of the distinguished class against alpha and the lifted parity",
    )?;
    if alpha == 1 {
        let both_even = half_square_even(af.gram()) && half_square_even(aa.gram());
        ck.check(
            f_nonzero == both_even,
            "half-square criterion on the torsion eigenlattices under alpha = 1",
        )?;
    }

    // Sigma-fixed dimension of L/2L modulo the distinguished subspace.
    let mut flag_cols = vec![vec![0u8; flag.dim()]; n];
    for (j, bv) in flag.basis_vectors().iter().enumerate() {
        for (i, row) in flag_cols.iter_mut().enumerate() {
            row[j] = bv[i];
        }
    }
    let flag_mat = F2Matrix::new(flag_cols, flag.dim());
    let preimage_dim = shifted_sigma.hstack(&flag_mat).kernel().rows();
    let quotient_fixed_dim = preimage_dim - flag.dim();
    ck.check_eq(
        "sigma-fixed dimension of the mod-2 quotient",
        quotient_fixed_dim as i64,
        (if f_nonzero { 11 } else { 12 }) - at - a_sigma + hp + hm,
    )?;
    let case_a = alpha == 1 && delta_pm == 0;
    ck.check_eq(
        "quotient dimension against the case split",
        quotient_fixed_dim as i64,
        (if case_a { 10 } else { 11 }) - at,
    )?;

    let b0_i = rt - at + std::cmp::max(1 - alpha as i64, delta_pm as i64);
    ck.check(b0_i >= 0, "base Betti number must be nonnegative")?;
    let b0 = b0_i as usize;

    let topology = if geometric {
        let section = topology_section(
            &mut ck, &sigma_inv, &ts_inv, b0, alpha, delta_pm, gamma, case_a, rt, at, a_sigma,
            hp, ci,
        )?;
        for out in &section.outcomes {
            ck.check(out.components <= 6, "component count exceeds six")?;
            ck.check(
                out.s_nor <= 4,
                "non-orientable component count exceeds four",
            )?;
            if out.components >= 1 {
                let lo = out
                    .brauer_min
                    .ok_or_else(|| fail("nonempty real locus must carry a Brauer estimate"))?;
                let hi = out
                    .brauer_max
                    .ok_or_else(|| fail("nonempty real locus must carry a Brauer estimate"))?;
                ck.check(
                    lo >= 2 * out.components - 1,
                    "Brauer dimension must dominate twice the component count minus one",
                )?;
                ck.check(
                    lo <= hi && hi <= out.b + 1,
                    "Brauer bounds must sit between the floor and b + 1",
                )?;
            }
        }
        Some(section)
    } else {
        None
    };
    let both_positive = topology.as_ref().is_some_and(|t| t.positive_count == 2);
    let beta = if case_a {
        Some(0)
    } else if both_positive {
        Some(1)
    } else {
        None
    };
    let b_candidates = match beta {
        Some(x) => vec![b0 + x as usize],
        None => vec![b0, b0 + 1],
    };

    Ok(AnalysisReport {
        lattice: l.name().to_string(),
        tau: tau_inv,
        sigma: sigma_inv,
        tau_sigma: ts_inv,
        theta,
        theta_in_table,
        sigma_hyperbolic,
        tau_sigma_hyperbolic,
        geometric,
        rank_fix_fix: ff.rank(),
        rank_fix_anti: fa.rank(),
        rank_anti_fix: af.rank(),
        rank_anti_anti: aa.rank(),
        h_plus,
        h_minus,
        c,
        gamma,
        alpha,
        delta_pm,
        f_nonzero,
        anti_image_fixed_dim: fixed_anti.dim(),
        inv_image_fixed_dim: fixed_inv.dim(),
        quotient_fixed_dim,
        picard_fixed_dim: 11 - theta.r,
        beta,
        b_candidates,
        topology,
        identities_verified: ck.passed,
    })
}

#[allow(clippy::too_many_arguments)]
fn topology_section(
    ck: &mut Checks,
    sigma_inv: &InvolutionInvariants,
    ts_inv: &InvolutionInvariants,
    b0: usize,
    alpha: u8,
    delta_pm: u8,
    gamma: usize,
    case_a: bool,
    rt: i64,
    at: i64,
    a_sigma: i64,
    hp: i64,
    ci: i64,
) -> Result<TopologySection, Error> {
    let sigma_set = fixed_set_topology(sigma_inv)?;
    let ts_set = fixed_set_topology(ts_inv)?;
    let s_sigma = sigma_set.component_count();
    let s_ts = ts_set.component_count();
    let sum = s_sigma + s_ts;
    let pos = usize::from(s_sigma > 0) + usize::from(s_ts > 0);

    let rs = sigma_inv.r as i64;
    let r_ts = ts_inv.r as i64;
    let asig = sigma_inv.a as i64;
    let a_ts = ts_inv.a as i64;
    ck.check_eq(
        "component count against the rank-length formula",
        sum as i64,
        pos as i64 + (rs + r_ts) / 2 - (asig + a_ts) / 2,
    )?;
    ck.check_eq(
        "component count against the glue formula",
        sum as i64,
        pos as i64 + 1 + rt - at - a_sigma + hp + ci,
    )?;
    if alpha == 1 && delta_pm == 1 {
        ck.check(
            s_sigma > 0 && s_ts > 0,
            "odd lifted parity with alpha = 1 forces both real loci nonempty",
        )?;
    }
    let min_term = std::cmp::min(alpha, delta_pm) as i64;
    ck.check(
        pos as i64 >= min_term,
        "at least as many nonempty loci as the parity defect",
    )?;
    ck.check_eq(
        "base Betti number against the component count",
        b0 as i64,
        sum as i64 - pos as i64 + min_term + gamma as i64,
    )?;
    if sum == 1 && rt == at {
        ck.check(
            case_a && gamma == 0 && b0 == 0,
            "a single component with r = a forces a vanishing Betti number",
        )?;
    }

    let outcomes = enumerate_outcomes(sum, pos, b0, alpha, delta_pm, gamma, case_a)?;
    Ok(TopologySection {
        sigma_fixed_set: sigma_set,
        tau_sigma_fixed_set: ts_set,
        component_sum: sum,
        positive_count: pos,
        empty_real_locus: sum == 0,
        outcomes,
    })
}

/// Lists the admissible component splits of a real locus with `sum`
/// components spread over `pos` nonempty halves, for the given torsion data.
///
/// Used both on concrete pairs of involutions and on abstract invariant
/// profiles, so it applies every local filter but places no cap on the
/// component counts themselves.
#[allow(clippy::too_many_arguments)]
pub(crate) fn enumerate_outcomes(
    sum: usize,
    pos: usize,
    b0: usize,
    alpha: u8,
    delta_pm: u8,
    gamma: usize,
    case_a: bool,
) -> Result<Vec<Outcome>, Error> {
    if sum == 0 {
        return Ok(vec![Outcome {
            beta: 0,
            b: 0,
            s_nor: 0,
            s_or: 0,
            components: 0,
            epsilon: None,
            brauer_min: None,
            brauer_max: None,
        }]);
    }
    let both = pos == 2;
    check(
        !(case_a && both),
        "beta must vanish in the orientable double-covering case, yet two nonempty real loci force beta = 1",
    )?;
    let beta_candidates: &[u8] = if case_a {
        &[0]
    } else if both {
        &[1]
    } else {
        &[0, 1]
    };
    let mut outcomes = Vec::new();
    for &bc in beta_candidates {
        let b = b0 + bc as usize;
        if both {
            check(
                b % 2 == 0,
                "Betti number must be even when both real loci are nonempty",
            )?;
            let s = (b + 2) / 2;
            check(sum >= s && 2 * s >= sum, "component split out of range")?;
            let s_or = sum - s;
            let s_nor = 2 * s - sum;
            let expected_nor = match (alpha, delta_pm) {
                (0, _) => 1 + gamma,
                (_, 0) => gamma,
                _ => 2 + gamma,
            };
            check_eq(
                "non-orientable component count",
                s_nor as i64,
                expected_nor as i64,
            )?;
            outcomes.push(Outcome {
                beta: bc,
                b,
                s_nor,
                s_or,
                components: s,
                epsilon: Some(1),
                brauer_min: Some(b + 1),
                brauer_max: Some(b + 1),
            });
        } else {
            for s_or in 0..=(sum / 2) {
                let s_nor = sum - 2 * s_or;
                let s = s_nor + s_or;
                if (b as i64) < 2 * s as i64 - 2 {
                    continue;
                }
                if b == 0 && !(s_nor == 1 && s_or == 0) {
                    continue;
                }
                let (epsilon, lo, hi) = if b == 2 * s - 2 {
                    (Some(1), b + 1, b + 1)
                } else {
                    (None, b, b + 1)
                };
                outcomes.push(Outcome {
                    beta: bc,
                    b,
                    s_nor,
                    s_or,
                    components: s,
                    epsilon,
                    brauer_min: Some(lo),
                    brauer_max: Some(hi),
                });
            }
        }
    }
    check(!outcomes.is_empty(), "no admissible component split")?;
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn reference_pair_full_report() {
        let tau = catalog::tau_reference();
        let sigma = catalog::sigma_reference();
        let rep = analyze(&tau, &sigma).unwrap();
        assert_eq!(rep.tau.as_tuple(), (10, 10, 0));
        assert_eq!(rep.sigma.as_tuple(), (1, 1, 1));
        assert_eq!(rep.tau_sigma.as_tuple(), (11, 11, 1));
        assert_eq!(rep.theta.as_tuple(), (0, 0, 0));
        assert!(rep.theta_in_table);
        assert!(rep.geometric);
        assert_eq!(
            (rep.h_plus, rep.h_minus, rep.c, rep.gamma),
            (0, 0, 0, 0)
        );
        assert_eq!(rep.alpha, 1);
        assert_eq!(rep.delta_pm, 1);
        assert!(!rep.f_nonzero);
        assert_eq!(rep.anti_image_fixed_dim, 11);
        assert_eq!(rep.inv_image_fixed_dim, 10);
        assert_eq!(rep.quotient_fixed_dim, 11);
        assert_eq!(rep.beta, Some(1));
        assert_eq!(rep.b_candidates, vec![2]);
        let topo = rep.topology.unwrap();
        assert_eq!(topo.component_sum, 2);
        assert_eq!(topo.positive_count, 2);
        assert_eq!(topo.outcomes.len(), 1);
        let out = &topo.outcomes[0];
        assert_eq!(
            (out.b, out.s_nor, out.s_or, out.components),
            (2, 2, 0, 2)
        );
        assert_eq!(out.epsilon, Some(1));
        assert_eq!((out.brauer_min, out.brauer_max), (Some(3), Some(3)));
        assert!(!topo.empty_real_locus);
        assert!(rep.identities_verified > 50);
    }

    #[test]
    fn minus_identity_passes_lattice_checks() {
        let tau = catalog::tau_reference();
        let m = IntMatrix::identity(22).neg();
        let sigma = Involution::new(tau.lattice(), m).unwrap();
        let rep = analyze(&tau, &sigma).unwrap();
        assert!(!rep.geometric);
        assert!(rep.topology.is_none());
        assert_eq!(rep.sigma.as_tuple(), (0, 0, 0));
        assert_eq!(rep.tau_sigma.as_tuple(), (12, 10, 0));
        assert_eq!(rep.theta.as_tuple(), (0, 0, 0));
        assert_eq!((rep.h_plus, rep.h_minus, rep.c), (0, 0, 0));
        assert_eq!(rep.alpha, 0);
        assert_eq!(rep.delta_pm, 0);
        assert!(rep.f_nonzero);
        assert_eq!(rep.anti_image_fixed_dim, 12);
        assert_eq!(rep.quotient_fixed_dim, 11);
        assert_eq!(rep.beta, None);
        assert_eq!(rep.b_candidates, vec![1, 2]);
    }

    #[test]
    fn negated_tau_passes_lattice_checks() {
        let tau = catalog::tau_reference();
        let sigma = tau.negated();
        let rep = analyze(&tau, &sigma).unwrap();
        assert!(!rep.geometric);
        assert_eq!(rep.sigma.as_tuple(), (12, 10, 0));
        assert_eq!(rep.tau_sigma.as_tuple(), (0, 0, 0));
        assert_eq!(rep.theta.as_tuple(), (0, 0, 0));
        assert_eq!((rep.h_plus, rep.h_minus, rep.c), (0, 10, 10));
        assert_eq!(rep.gamma, 0);
        assert_eq!(rep.alpha, 0);
        assert_eq!(rep.delta_pm, 0);
        assert!(rep.f_nonzero);
    }

    #[test]
    fn rejects_identity_tau_copy_and_non_commuting() {
        let tau = catalog::tau_reference();
        let l = tau.lattice();
        let id = Involution::new(l, IntMatrix::identity(22)).unwrap();
        assert!(matches!(
            analyze(&tau, &id),
            Err(Error::InvalidTriple(_))
        ));
        let tau_copy = Involution::new(l, tau.matrix().clone()).unwrap();
        assert!(matches!(
            analyze(&tau, &tau_copy),
            Err(Error::InvalidTriple(_))
        ));
        let mut blocks = vec![1i64; 22];
        for (i, b) in blocks.iter_mut().enumerate() {
            if i == 2 || i == 3 {
                *b = -1;
            }
        }
        let diag_rows: Vec<Vec<i64>> = (0..22)
            .map(|i| {
                (0..22)
                    .map(|j| if i == j { blocks[i] } else { 0 })
                    .collect()
            })
            .collect();
        let skew = Involution::new(l, IntMatrix::from_rows(&diag_rows)).unwrap();
        assert!(matches!(
            analyze(&tau, &skew),
            Err(Error::InvalidTriple(_))
        ));
    }
}
