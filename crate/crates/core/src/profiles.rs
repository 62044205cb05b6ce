//! Exhaustive enumeration of abstract invariant profiles.
//!
//! A [`Profile`] is a tuple of numerical invariants that passes every
//! identity and bound [`crate::enriques::analyze`] would verify on a
//! concrete pair of involutions. The enumeration is purely syntactic: it
//! lists the value combinations the constraints admit and certifies
//! nothing about which combinations arise from an actual surface. Its
//! point is the other direction: every analyzed pair must land on a listed
//! profile, and the maxima over the list bound the component counts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::enriques::{enumerate_outcomes, AnalysisReport, Outcome, THETA_TABLE};
use crate::error::Error;
use crate::invol::{component_count, InvolutionInvariants};

/// Caveat attached to every rendering of the enumeration: profiles are
/// consistent value combinations, not existence statements.
pub const PROFILE_NOTE: &str = "Profiles list invariant combinations passing every identity and \
bound; they do not certify that a surface with those invariants exists.";

/// One consistent combination of invariant values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    /// Invariants of the involution restricted to the halved fixed lattice.
    pub theta: (usize, usize, u8),
    pub sigma: (usize, usize, u8),
    pub tau_sigma: (usize, usize, u8),
    pub h_plus: usize,
    pub h_minus: usize,
    pub c: usize,
    pub gamma: usize,
    pub alpha: u8,
    pub delta_pm: u8,
    /// Components of the real locus of the sigma half.
    pub s_sigma: usize,
    /// Components of the real locus of the tau.sigma half.
    pub s_tau_sigma: usize,
    /// Base value of the first Betti number before the torsion term.
    pub b0: usize,
    pub outcomes: Vec<Outcome>,
}

impl Profile {
    pub fn component_sum(&self) -> usize {
        self.s_sigma + self.s_tau_sigma
    }

    pub fn positive_count(&self) -> usize {
        usize::from(self.s_sigma > 0) + usize::from(self.s_tau_sigma > 0)
    }

    /// Whether a concrete analysis landed exactly on this profile.
    pub fn matches(&self, rep: &AnalysisReport) -> bool {
        let Some(topo) = rep.topology.as_ref() else {
            return false;
        };
        rep.theta.as_tuple() == self.theta
            && rep.sigma.as_tuple() == self.sigma
            && rep.tau_sigma.as_tuple() == self.tau_sigma
            && (rep.h_plus, rep.h_minus, rep.c, rep.gamma)
                == (self.h_plus, self.h_minus, self.c, self.gamma)
            && (rep.alpha, rep.delta_pm) == (self.alpha, self.delta_pm)
            && topo.sigma_fixed_set.component_count() == self.s_sigma
            && topo.tau_sigma_fixed_set.component_count() == self.s_tau_sigma
            && topo.outcomes == self.outcomes
    }
}

/// Switches for the enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Require at least as many nonempty real loci as the parity defect
    /// `min(alpha, delta_pm)`, with equality only when both loci are empty.
    /// On by default; switching it off widens the profile list and lets
    /// tests measure how much this single rule prunes.
    pub positivity_rule: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            positivity_rule: true,
        }
    }
}

fn admissible_invariants(r: i64, a: i64, delta: u8) -> bool {
    if r < 1 || r > 21 {
        return false;
    }
    if a < 0 || a > r.min(22 - r) {
        return false;
    }
    if (r - a) % 2 != 0 {
        return false;
    }
    if a == 0 && delta == 1 {
        return false;
    }
    if delta == 0 && a % 2 != 0 {
        return false;
    }
    true
}

fn components(r: i64, a: i64, delta: u8) -> Option<usize> {
    let inv = InvolutionInvariants {
        r: r as usize,
        a: a as usize,
        delta,
    };
    component_count(&inv).ok()
}

/// Lists every invariant profile consistent with the constraint system,
/// sorted lexicographically.
pub fn enumerate_profiles(opts: &EnumerationOptions) -> Vec<Profile> {
    let mut out = Vec::new();
    for &(rt_u, at_u, dt) in THETA_TABLE.iter() {
        let rt = rt_u as i64;
        let at = at_u as i64;
        for rs in 1..=21i64 {
            let r_ts = 12 + 2 * rt - rs;
            for a_s in 0..=rs.min(22 - rs) {
                for d_s in 0..=1u8 {
                    if !admissible_invariants(rs, a_s, d_s) {
                        continue;
                    }
                    let d_ts = (d_s + dt) % 2;
                    for hp in at..=rt.min(a_s) {
                        for hm in 0..=(10 - rt).min(a_s) {
                            let alpha = a_s - hp - hm;
                            if alpha != 0 && alpha != 1 {
                                continue;
                            }
                            if rs - a_s < 2 * rt - 2 * hp {
                                continue;
                            }
                            if rs + a_s > 2 * hm + 2 * rt + 2 {
                                continue;
                            }
                            for c in at..=hm {
                                let gamma = hm - c;
                                if gamma > 2 {
                                    continue;
                                }
                                let a_ts = a_s + 10 + 2 * at - 2 * hp - 2 * c;
                                if !admissible_invariants(r_ts, a_ts, d_ts) {
                                    continue;
                                }
                                let Some(s_sigma) = components(rs, a_s, d_s) else {
                                    continue;
                                };
                                let Some(s_ts) = components(r_ts, a_ts, d_ts) else {
                                    continue;
                                };
                                let sum = s_sigma + s_ts;
                                let pos = usize::from(s_sigma > 0) + usize::from(s_ts > 0);
                                for dpm in 0..=1u8 {
                                    if d_s == 0 && dpm == 1 {
                                        continue;
                                    }
                                    if at == 0 && d_s == 1 && dpm == 0 {
                                        continue;
                                    }
                                    let min_term = dpm.min(alpha as u8);
                                    if opts.positivity_rule {
                                        if (pos as i64) < min_term as i64 {
                                            continue;
                                        }
                                        if pos == min_term as usize && sum > 0 {
                                            continue;
                                        }
                                    }
                                    let b0 =
                                        rt - at + (1 - alpha).max(dpm as i64);
                                    if b0 != sum as i64 - pos as i64
                                        + min_term as i64
                                        + gamma
                                    {
                                        continue;
                                    }
                                    let case_a = alpha == 1 && dpm == 0;
                                    if sum == 1
                                        && rt == at
                                        && !(case_a && gamma == 0 && b0 == 0)
                                    {
                                        continue;
                                    }
                                    let Ok(outcomes) = enumerate_outcomes(
                                        sum,
                                        pos,
                                        b0 as usize,
                                        alpha as u8,
                                        dpm,
                                        gamma as usize,
                                        case_a,
                                    ) else {
                                        continue;
                                    };
                                    out.push(Profile {
                                        theta: (rt_u, at_u, dt),
                                        sigma: (rs as usize, a_s as usize, d_s),
                                        tau_sigma: (r_ts as usize, a_ts as usize, d_ts),
                                        h_plus: hp as usize,
                                        h_minus: hm as usize,
                                        c: c as usize,
                                        gamma: gamma as usize,
                                        alpha: alpha as u8,
                                        delta_pm: dpm,
                                        s_sigma,
                                        s_tau_sigma: s_ts,
                                        b0: b0 as usize,
                                        outcomes,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|p| {
        (
            p.theta, p.sigma, p.tau_sigma, p.h_plus, p.h_minus, p.c, p.delta_pm,
        )
    });
    out
}

/// The enumeration with every rule switched on.
pub fn default_profiles() -> Vec<Profile> {
    enumerate_profiles(&EnumerationOptions::default())
}

/// Extremes of the profile list together with the profiles attaining them.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub profile_count: usize,
    pub outcome_count: usize,
    /// Largest total component count over all outcomes.
    pub max_components: usize,
    /// Largest non-orientable component count over all outcomes.
    pub max_non_orientable: usize,
    pub max_component_witness: Profile,
    pub max_non_orientable_witness: Profile,
}

/// Scans the profile list for its extremes, verifying the component bound
/// `2s <= 2 + r - a + max(1 - alpha, delta) + beta` outcome by outcome.
pub fn bound_report(profiles: &[Profile]) -> Result<BoundReport, Error> {
    let mut outcome_count = 0usize;
    let mut max_components = 0usize;
    let mut max_non_orientable = 0usize;
    let mut component_witness: Option<&Profile> = None;
    let mut non_orientable_witness: Option<&Profile> = None;
    for p in profiles {
        let slack = (1 - p.alpha as i64).max(p.delta_pm as i64);
        let spread = p.theta.0 as i64 - p.theta.1 as i64;
        for out in &p.outcomes {
            outcome_count += 1;
            if 2 * out.components as i64 > 2 + spread + slack + out.beta as i64 {
                return Err(Error::Inconsistency(format!(
                    "component count {} escapes the rank bound on profile {:?}/{:?}",
                    out.components, p.theta, p.sigma
                )));
            }
            if out.components > max_components
                || (component_witness.is_none() && out.components == max_components)
            {
                max_components = out.components;
                component_witness = Some(p);
            }
            if out.s_nor > max_non_orientable
                || (non_orientable_witness.is_none() && out.s_nor == max_non_orientable)
            {
                max_non_orientable = out.s_nor;
                non_orientable_witness = Some(p);
            }
        }
    }
    let (Some(cw), Some(nw)) = (component_witness, non_orientable_witness) else {
        return Err(Error::Inconsistency("no profiles to scan".into()));
    };
    if max_components == 6 && cw.theta.0 - cw.theta.1 != 8 {
        return Err(Error::Inconsistency(
            "a six-component witness must have r - a = 8 on the restricted invariants".into(),
        ));
    }
    Ok(BoundReport {
        profile_count: profiles.len(),
        outcome_count,
        max_components,
        max_non_orientable,
        max_component_witness: cw.clone(),
        max_non_orientable_witness: nw.clone(),
    })
}

/// Result of matching analyzed pairs against the profile enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub analyzed: usize,
    /// How many of the analyzed pairs have both real structures hyperbolic.
    pub geometric: usize,
    /// Restricted-involution invariants realized by the analyzed pairs.
    pub realized_thetas: Vec<(usize, usize, u8)>,
    /// Table entries no analyzed pair realized.
    pub unrealized_thetas: Vec<(usize, usize, u8)>,
}

/// Confirms that every geometric analyzed pair lands on an enumerated
/// profile and collects which restricted invariants the batch realizes.
pub fn catalog_cross_check(
    reports: &[AnalysisReport],
    profiles: &[Profile],
) -> Result<CrossCheckReport, Error> {
    let mut geometric = 0usize;
    let mut realized: BTreeSet<(usize, usize, u8)> = BTreeSet::new();
    for rep in reports {
        if !rep.geometric {
            continue;
        }
        geometric += 1;
        if !rep.theta_in_table {
            return Err(Error::Inconsistency(format!(
                "analyzed pair realizes invariants {} outside the table",
                rep.theta
            )));
        }
        if !profiles.iter().any(|p| p.matches(rep)) {
            return Err(Error::Inconsistency(format!(
                "analyzed pair with restricted invariants {} and invariants {} is \
                 missing from the profile enumeration",
                rep.theta, rep.sigma
            )));
        }
        realized.insert(rep.theta.as_tuple());
    }
    let unrealized: Vec<(usize, usize, u8)> = THETA_TABLE
        .iter()
        .copied()
        .filter(|t| !realized.contains(t))
        .collect();
    Ok(CrossCheckReport {
        analyzed: reports.len(),
        geometric,
        realized_thetas: realized.into_iter().collect(),
        unrealized_thetas: unrealized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enriques::analyze;

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let a = default_profiles();
        let b = default_profiles();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        let mut keys: Vec<_> = a
            .iter()
            .map(|p| (p.theta, p.sigma, p.tau_sigma, p.h_plus, p.h_minus, p.c, p.delta_pm))
            .collect();
        let sorted = {
            let mut s = keys.clone();
            s.sort();
            s
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), a.len());
    }

    #[test]
    fn maxima_are_six_and_four() {
        let profiles = default_profiles();
        let report = bound_report(&profiles).unwrap();
        assert_eq!(report.max_components, 6);
        assert_eq!(report.max_non_orientable, 4);
        assert_eq!(report.max_component_witness.theta.0 - report.max_component_witness.theta.1, 8);
    }

    #[test]
    fn reference_pair_lands_on_a_profile() {
        let tau = catalog::tau_reference();
        let sigma = catalog::sigma_reference();
        let rep = analyze(&tau, &sigma).unwrap();
        let profiles = default_profiles();
        assert!(profiles.iter().any(|p| p.matches(&rep)));
    }

    #[test]
    fn dropping_the_positivity_rule_widens_the_list_but_not_the_maxima() {
        let strict = default_profiles();
        let relaxed = enumerate_profiles(&EnumerationOptions {
            positivity_rule: false,
        });
        assert!(relaxed.len() > strict.len());
        for p in &strict {
            assert!(relaxed.contains(p));
        }
        let extra: Vec<&Profile> = relaxed
            .iter()
            .filter(|p| !strict.contains(p))
            .collect();
        assert!(!extra.is_empty());
        for p in &extra {
            assert!(p.alpha.min(p.delta_pm) == 1 && p.positive_count() < 2);
        }
        let report = bound_report(&relaxed).unwrap();
        assert_eq!(report.max_components, 6);
        assert_eq!(report.max_non_orientable, 4);
    }

    #[test]
    fn empty_locus_profiles_suppress_the_brauer_estimate() {
        let profiles = default_profiles();
        let empties: Vec<&Profile> = profiles
            .iter()
            .filter(|p| p.component_sum() == 0)
            .collect();
        assert!(!empties.is_empty());
        for p in empties {
            assert_eq!(p.sigma, (10, 10, 0));
            assert_eq!(p.tau_sigma, (10, 10, 0));
            assert_eq!(p.outcomes.len(), 1);
            let out = &p.outcomes[0];
            assert_eq!(out.components, 0);
            assert_eq!(out.brauer_min, None);
            assert_eq!(out.brauer_max, None);
        }
    }
}
