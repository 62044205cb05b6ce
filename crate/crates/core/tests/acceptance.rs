use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use enriq::catalog::{self, k3_lattice, sigma_reference, tau_reference};
use enriq::disc::{add_vecs, gram_pairing, mod1, mod2};
use enriq::enriques::{analyze, AnalysisReport, THETA_TABLE};
use enriq::f2::{F2Matrix, Subspace};
use enriq::invol::{fixed_set_topology, joint_eigenlattice, FixedSetTopology, Involution};
use enriq::lattice::{Lattice, Sublattice};
use enriq::linalg::{int, Int, IntMatrix, Rat};
use enriq::profiles::{bound_report, default_profiles};
use num::{Integer as _, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn analyzed_catalog() -> Vec<(&'static str, AnalysisReport)> {
    catalog::standard_triples()
        .into_iter()
        .filter_map(|entry| {
            let report = analyze(&entry.tau(), &entry.sigma()).ok()?;
            Some((entry.name, report))
        })
        .collect()
}

fn max_term(alpha: u8, delta_pm: u8) -> usize {
    usize::from(1 - alpha).max(usize::from(delta_pm))
}

#[test]
fn c01_reference_involution_invariants_and_empty_fixed_locus() {
    let start = Instant::now();
    let tau = tau_reference();
    let inv = tau.invariants().unwrap();
    assert_eq!(inv.as_tuple(), (10, 10, 0));
    assert_eq!(fixed_set_topology(&inv).unwrap(), FixedSetTopology::Empty);
    assert!(start.elapsed() < Duration::from_secs(1));
    println!("PASS: reference involution has invariants (10,10,0) and empty fixed locus");
}

#[test]
fn c02_reference_pair_full_analysis_cross_checked() {
    let start = Instant::now();
    let tau = tau_reference();
    let sigma = sigma_reference();

    assert!(tau.commutes_with(&sigma));
    let tau_sigma = tau.compose(&sigma).unwrap();
    assert!(!tau.is_identity() && !sigma.is_identity() && !tau_sigma.is_identity());
    assert_ne!(tau.matrix(), sigma.matrix());
    assert_ne!(tau.matrix(), tau_sigma.matrix());
    assert_ne!(sigma.matrix(), tau_sigma.matrix());

    let report = analyze(&tau, &sigma).unwrap();
    assert_eq!(report.sigma.as_tuple(), (1, 1, 1));
    assert_eq!(report.tau_sigma.as_tuple(), (11, 11, 1));
    assert_eq!(report.theta.as_tuple(), (0, 0, 0));
    assert_eq!((report.h_plus, report.h_minus, report.c), (0, 0, 0));
    assert_eq!(report.gamma, 0);
    assert_eq!(report.alpha, 1);
    assert_eq!(report.delta_pm, 1);

    let sig_direct = {
        let fixed = sigma.fixed_sublattice();
        let disc = fixed.discriminant_form().unwrap();
        assert!(disc.divisors().iter().all(|d| *d == int(2)));
        let delta = u8::from(!disc.is_even());
        (fixed.rank(), disc.divisors().len(), delta)
    };
    assert_eq!(sig_direct, (1, 1, 1));

    assert_eq!(
        report.sigma.r + report.tau_sigma.r,
        12 + 2 * report.theta.r
    );
    assert_eq!(
        report.tau_sigma.a as i64 - report.sigma.a as i64,
        10 + 2 * report.theta.a as i64 - 2 * report.h_plus as i64 - 2 * report.c as i64
    );
    assert_eq!(
        (report.sigma.delta + report.tau_sigma.delta) % 2,
        report.theta.delta
    );

    let topo = report.topology.as_ref().unwrap();
    assert_eq!(
        topo.sigma_fixed_set,
        FixedSetTopology::GenusPlusSpheres {
            genus: 10,
            spheres: 0
        }
    );
    assert_eq!(
        topo.tau_sigma_fixed_set,
        FixedSetTopology::GenusPlusSpheres {
            genus: 0,
            spheres: 0
        }
    );
    assert_eq!(topo.sigma_fixed_set.component_count(), 1);
    assert_eq!(topo.tau_sigma_fixed_set.component_count(), 1);
    assert_eq!(topo.component_sum, 2);
    assert_eq!(topo.positive_count, 2);

    assert_eq!(report.beta, Some(1));
    assert_eq!(report.b_candidates, vec![2]);
    assert_eq!(topo.outcomes.len(), 1);
    let out = &topo.outcomes[0];
    assert_eq!(out.beta, 1);
    assert_eq!(out.b, 2);
    assert_eq!((out.s_nor, out.s_or, out.components), (2, 0, 2));
    assert_eq!(out.epsilon, Some(1));
    assert_eq!((out.brauer_min, out.brauer_max), (Some(3), Some(3)));

    let beta = usize::from(out.beta);
    let unified = report.theta.r - report.theta.a + max_term(report.alpha, report.delta_pm) + beta;
    assert_eq!(out.b, unified);
    let via_components = topo.component_sum - topo.positive_count
        + usize::from(report.alpha.min(report.delta_pm))
        + report.gamma
        + beta;
    assert_eq!(out.b, via_components);
    assert_eq!(out.brauer_min, Some(out.b + 1));
    assert_eq!(out.components, (out.b + 2) / 2);
    assert_eq!(out.s_nor, 2 * out.components - topo.component_sum);

    assert!(start.elapsed() < Duration::from_secs(5));
    println!("PASS: reference pair analysis matches every frozen value through independent routes");
}

#[test]
fn c03_rank_additivity_identities_across_catalog() {
    let reports = analyzed_catalog();
    assert!(
        reports.len() >= 20,
        "only {} catalog triples analyzed cleanly",
        reports.len()
    );
    for (name, rep) in &reports {
        assert_eq!(
            rep.sigma.r + rep.tau_sigma.r,
            12 + 2 * rep.theta.r,
            "rank identity fails on {name}"
        );
        assert_eq!(
            rep.tau_sigma.a as i64 - rep.sigma.a as i64,
            10 + 2 * rep.theta.a as i64 - 2 * rep.h_plus as i64 - 2 * rep.c as i64,
            "length identity fails on {name}"
        );
        assert_eq!(
            (rep.sigma.delta + rep.tau_sigma.delta) % 2,
            rep.theta.delta,
            "parity identity fails on {name}"
        );
    }

    let l = k3_lattice();
    let mut rows: Vec<Vec<Int>> = (0..22).map(|i| sigma_reference().matrix().row(i)).collect();
    rows[0][0] += 1;
    let perturbed = IntMatrix::from_int_rows(rows);
    assert!(Involution::new(&l, perturbed).is_err());
    println!(
        "PASS: the three additivity identities hold on {} catalog triples; broken isometries are rejected up front",
        reports.len()
    );
}

type Glue3 = Vec<Vec<Rat>>;

fn reduce3(g: &Glue3) -> Glue3 {
    g.iter()
        .map(|part| part.iter().map(mod1).collect())
        .collect()
}

fn add3(a: &Glue3, b: &Glue3) -> Glue3 {
    reduce3(
        &a.iter()
            .zip(b)
            .map(|(x, y)| add_vecs(x, y))
            .collect::<Glue3>(),
    )
}

fn three_summand_glue(l: &Lattice, parts: [&Sublattice; 3]) -> BTreeSet<Glue3> {
    let n = l.rank();
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        let image: Glue3 = parts.iter().map(|s| s.project_dual(&e)).collect();
        gens.push(reduce3(&image));
    }
    let zero: Glue3 = parts.iter().map(|s| vec![Rat::zero(); s.rank()]).collect();
    let mut set = BTreeSet::new();
    set.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(cur) = queue.pop() {
        for g in &gens {
            let next = add3(&cur, g);
            if set.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    set
}

fn is_zero_part(part: &[Rat]) -> bool {
    part.iter().all(Rat::is_zero)
}

#[test]
fn c04_three_summand_glue_complement_identity() {
    let start = Instant::now();
    let names = ["t1a1d1", "t2a2d1", "t4a2d0", "t7a1d1", "t8a0d0", "t9a1d1"];
    let entries = catalog::standard_triples();
    let mut verified = 0usize;
    for name in names {
        let entry = entries.iter().find(|e| e.name == name).unwrap();
        let tau = entry.tau();
        let sigma = entry.sigma();
        let l = tau.lattice().clone();
        let s1 = joint_eigenlattice(&tau, int(1), &sigma, int(1)).unwrap();
        let s2 = joint_eigenlattice(&tau, int(1), &sigma, int(-1)).unwrap();
        let s3 = tau.anti_sublattice();
        assert!(s1.rank() >= 1 && s2.rank() >= 1);
        assert_eq!(s1.rank() + s2.rank() + s3.rank(), 22);

        let orders: Vec<Int> = [&s1, &s2, &s3]
            .iter()
            .map(|s| s.discriminant_form().unwrap().order().clone())
            .collect();
        let product = &orders[0] * &orders[1] * &orders[2];

        let glue = three_summand_glue(&l, [&s1, &s2, &s3]);
        let order = int(glue.len() as i64);
        assert!(glue.len() <= 1 << 12, "glue too large on {name}");
        assert_eq!(&order * &order, product, "order square fails on {name}");

        let g12: Vec<&Glue3> = glue.iter().filter(|g| is_zero_part(&g[2])).collect();
        let g13: Vec<&Glue3> = glue.iter().filter(|g| is_zero_part(&g[1])).collect();
        let g23: Vec<&Glue3> = glue.iter().filter(|g| is_zero_part(&g[0])).collect();

        assert_eq!(
            int((g12.len() * g23.len()) as i64),
            orders[1],
            "middle summand order split fails on {name}"
        );

        let complement: BTreeSet<Glue3> = glue
            .iter()
            .filter(|g| {
                g12.iter().all(|h| {
                    mod1(&gram_pairing(s2.gram(), &g[1], &h[1])).is_zero()
                })
            })
            .cloned()
            .collect();
        let mut sums = BTreeSet::new();
        for a in &g23 {
            for b in &g13 {
                sums.insert(add3(a, b));
            }
        }
        assert_eq!(complement, sums, "complement identity fails on {name}");
        verified += 1;
    }
    assert!(verified >= 5);
    assert!(start.elapsed() < Duration::from_secs(30));
    println!("PASS: complement identity verified exhaustively on {verified} three-summand decompositions");
}

fn brute_force_cosets(gram: &IntMatrix, limit: usize) -> Option<BTreeSet<Vec<Rat>>> {
    let inverse = gram.to_rational().inverse()?;
    let n = gram.rows();
    let gens: Vec<Vec<Rat>> = (0..n)
        .map(|j| inverse.column(j).iter().map(mod1).collect())
        .collect();
    let zero = vec![Rat::zero(); n];
    let mut set = BTreeSet::new();
    set.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(cur) = queue.pop() {
        for g in &gens {
            let next: Vec<Rat> = add_vecs(&cur, g).iter().map(mod1).collect();
            if set.insert(next.clone()) {
                if set.len() > limit {
                    return None;
                }
                queue.push(next.clone());
            }
        }
    }
    Some(set)
}

#[test]
fn c05_discriminant_group_oracle_random_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x454e5249);
    let mut checked = 0usize;
    let mut brute_forced = 0usize;
    while checked < 200 {
        let n = rng.gen_range(1..=5usize);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-5..=5i64);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        let gram = IntMatrix::from_rows(&rows);
        if gram.det().unwrap().is_zero() {
            continue;
        }
        let l = Lattice::new("rand", gram.clone()).unwrap();
        let disc = l.discriminant_form().unwrap();
        let det_abs = l.det().abs();
        assert_eq!(disc.order(), &det_abs);

        let gens = disc.gens().to_vec();
        for x in &gens {
            for y in &gens {
                let lhs = disc.b(&disc.add(x, y), x);
                let rhs = disc.b(x, x) + disc.b(y, x);
                assert!(mod1(&(lhs - rhs)).is_zero());
                if l.is_even() {
                    let q_sum = disc.q(&disc.add(x, y)).unwrap();
                    let q_parts = disc.q(x).unwrap()
                        + disc.q(y).unwrap()
                        + disc.b(x, y) * Rat::from(int(2));
                    assert!(mod2(&(q_sum - q_parts)).is_zero());
                } else {
                    assert!(disc.q(x).is_err());
                }
            }
        }

        if det_abs <= int(64) {
            let brute = brute_force_cosets(&gram, 64).unwrap();
            assert_eq!(int(brute.len() as i64), det_abs);
            let listed = disc.enumerate_elements(64).unwrap();
            let reduced: BTreeSet<Vec<Rat>> = listed
                .iter()
                .map(|e| e.iter().map(mod1).collect())
                .collect();
            assert_eq!(reduced, brute);
            brute_forced += 1;
        }
        checked += 1;
    }
    assert!(brute_forced >= 30, "only {brute_forced} brute-force comparisons ran");
    println!(
        "PASS: discriminant order and form relations verified on 200 random lattices ({brute_forced} with exhaustive coset comparison)"
    );
}

fn mod2_vec(v: &[Int]) -> Vec<u8> {
    v.iter()
        .map(|x| if x.is_even() { 0 } else { 1 })
        .collect()
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn half_square_mod2(l: &Lattice, x: &[Int]) -> u8 {
    let square = l.pairing(x, x);
    assert!(square.is_even());
    let half = square / int(2);
    u8::from(half.is_odd())
}

#[test]
fn c06_distinguished_class_square_and_invariance() {
    let tau = tau_reference();
    let sigma = sigma_reference();
    let l = tau.lattice().clone();
    let anti = tau.anti_sublattice();
    let fixed = tau.fixed_sublattice();

    let anti_mod2 = F2Matrix::from_int_matrix(anti.basis());
    let anti_cols: Vec<Vec<u8>> = (0..anti.rank())
        .map(|j| mod2_vec(&anti.basis().column(j)))
        .collect();
    let fixed_cols: Vec<Vec<u8>> = (0..fixed.rank())
        .map(|j| mod2_vec(&fixed.basis().column(j)))
        .collect();
    let span_anti = Subspace::from_spanning(&anti_cols, 22);
    let span_fixed = Subspace::from_spanning(&fixed_cols, 22);
    assert_eq!(span_anti.dim(), 12);
    assert_eq!(span_fixed.dim(), 10);
    assert!(span_anti.contains_subspace(&span_fixed));

    let mut reps = Vec::new();
    let mut grown = span_fixed.clone();
    for v in span_anti.basis_vectors() {
        if !grown.contains(&v) {
            grown = grown.sum(&Subspace::from_spanning(&[v.clone()], 22));
            reps.push(v);
        }
    }
    assert_eq!(reps.len(), 2);

    let quotient_value = |v: &[u8]| -> u8 {
        let coeffs = anti_mod2.solve(v).expect("vector lies in the anti span");
        let coeffs_int: Vec<Int> = coeffs.iter().map(|&c| int(c as i64)).collect();
        let lift = anti.basis().mul_vec(&coeffs_int);
        let value = half_square_mod2(&l, &lift);
        let shifted = xor(v, &fixed_cols[0]);
        let coeffs2 = anti_mod2.solve(&shifted).unwrap();
        let coeffs2_int: Vec<Int> = coeffs2.iter().map(|&c| int(c as i64)).collect();
        let lift2 = anti.basis().mul_vec(&coeffs2_int);
        assert_eq!(value, half_square_mod2(&l, &lift2));
        value
    };

    let cosets = [
        reps[0].clone(),
        reps[1].clone(),
        xor(&reps[0], &reps[1]),
    ];
    let values: Vec<u8> = cosets.iter().map(|v| quotient_value(v)).collect();
    assert_eq!(values.iter().filter(|&&v| v == 1).count(), 1);
    assert_eq!(values.iter().filter(|&&v| v == 0).count(), 2);

    let f_vec = &cosets[values.iter().position(|&v| v == 1).unwrap()];
    let sigma_mod2 = F2Matrix::from_int_matrix(sigma.matrix());
    let moved = sigma_mod2.mul_vec(f_vec);
    assert!(span_fixed.contains(&xor(&moved, f_vec)));
    println!("PASS: the distinguished coset is the unique odd-half-square class and is sigma-stable");
}

#[test]
fn c07_distinguished_class_vanishing_three_cases() {
    let reports = analyzed_catalog();
    assert!(reports.len() >= 20);
    for (name, rep) in &reports {
        let predicted = match (rep.alpha, rep.delta_pm) {
            (0, _) => true,
            (1, 0) => true,
            (1, 1) => false,
            _ => unreachable!(),
        };
        assert_eq!(
            rep.f_nonzero, predicted,
            "vanishing case disagrees on {name}"
        );
    }
    println!(
        "PASS: direct pairing evaluation matches the three-case vanishing rule on {} triples",
        reports.len()
    );
}

#[test]
fn c08_mod2_fixed_subspace_dimension_formulas() {
    let reports = analyzed_catalog();
    assert!(reports.len() >= 20);
    for (name, rep) in &reports {
        let expected_anti = 12 + rep.h_plus + rep.h_minus - rep.theta.a - rep.sigma.a;
        assert_eq!(
            rep.anti_image_fixed_dim, expected_anti,
            "joint fixed dimension fails on {name}"
        );
        assert_eq!(
            rep.inv_image_fixed_dim,
            10 - rep.theta.a,
            "invariant image dimension fails on {name}"
        );
    }
    println!(
        "PASS: mod-2 fixed subspace dimensions match the closed formulas on {} triples",
        reports.len()
    );
}

#[test]
fn c09_enumeration_reproduces_component_bounds() {
    let start = Instant::now();
    let profiles = default_profiles();
    let report = bound_report(&profiles).unwrap();
    assert_eq!(report.max_components, 6);
    assert_eq!(report.max_non_orientable, 4);

    let witness = &report.max_component_witness;
    assert_eq!(witness.theta, (8, 0, 0));
    assert_eq!(witness.sigma, (17, 1, 1));
    assert_eq!(witness.tau_sigma, (11, 11, 1));
    assert!(report
        .max_non_orientable_witness
        .outcomes
        .iter()
        .any(|o| o.s_nor == 4));

    for profile in &profiles {
        let cap = 2 + (profile.theta.0 - profile.theta.1)
            + max_term(profile.alpha, profile.delta_pm);
        for out in &profile.outcomes {
            assert!(
                2 * out.components <= cap + usize::from(out.beta),
                "component bound fails at theta={:?} sigma={:?}",
                profile.theta,
                profile.sigma
            );
        }
    }
    assert!(start.elapsed() < Duration::from_secs(60));
    println!(
        "PASS: enumeration yields max components 6 and max non-orientable 4 over {} profiles with the pointwise bound",
        profiles.len()
    );
}

#[test]
fn c10_theta_membership_table_is_exact() {
    assert_eq!(THETA_TABLE.len(), 16);
    let distinct: BTreeSet<_> = THETA_TABLE.iter().collect();
    assert_eq!(distinct.len(), 16);

    let mut accepted = 0usize;
    for r in 0..=10usize {
        for a in 0..=10usize {
            for delta in 0..=1u8 {
                if THETA_TABLE.contains(&(r, a, delta)) {
                    accepted += 1;
                }
            }
        }
    }
    assert_eq!(accepted, 16);

    let reports = analyzed_catalog();
    for (name, rep) in &reports {
        if rep.geometric {
            assert!(
                rep.theta_in_table,
                "geometric triple {name} has theta outside the table"
            );
            assert!(THETA_TABLE.contains(&rep.theta.as_tuple()));
        }
    }
    let rejected = reports
        .iter()
        .find(|(name, _)| *name == "identity")
        .map(|(_, rep)| rep);
    if let Some(rep) = rejected {
        assert_eq!(rep.theta.as_tuple(), (10, 0, 0));
        assert!(!rep.theta_in_table);
    }
    assert!(!THETA_TABLE.contains(&(10, 0, 0)));
    println!("PASS: the sixteen-entry table is exact and every geometric catalog triple lands inside it");
}

#[test]
fn c11_zero_betti_characterization() {
    let profiles = default_profiles();
    let mut zero_witness = false;
    for profile in &profiles {
        let balanced = profile.theta.0 == profile.theta.1;
        for out in &profile.outcomes {
            if out.components == 0 {
                continue;
            }
            let connected_nonorientable = out.components == 1 && out.s_nor == 1;
            assert_eq!(
                out.b == 0,
                connected_nonorientable && balanced,
                "characterization fails at theta={:?} sigma={:?} b={}",
                profile.theta,
                profile.sigma,
                out.b
            );
            if out.b == 0 {
                assert_eq!(out.epsilon, Some(1));
                assert_eq!((out.brauer_min, out.brauer_max), (Some(1), Some(1)));
                if profile.component_sum() == 1 {
                    zero_witness = true;
                }
            }
        }
    }
    assert!(zero_witness, "no connected witness with vanishing Betti number");

    for (name, rep) in &analyzed_catalog() {
        let Some(topo) = rep.topology.as_ref() else {
            continue;
        };
        let balanced = rep.theta.r == rep.theta.a;
        for out in &topo.outcomes {
            if out.components == 0 {
                continue;
            }
            let connected_nonorientable = out.components == 1 && out.s_nor == 1;
            assert_eq!(
                out.b == 0,
                connected_nonorientable && balanced,
                "characterization fails on {name}"
            );
        }
    }
    println!("PASS: vanishing Betti number happens exactly on connected non-orientable loci with balanced invariants");
}

#[test]
fn c12_betti_and_brauer_formula_coherence() {
    let reports = analyzed_catalog();
    let mut outcome_count = 0usize;
    for (name, rep) in &reports {
        let Some(topo) = rep.topology.as_ref() else {
            continue;
        };
        let case_a = rep.alpha == 1 && rep.delta_pm == 0;
        for out in &topo.outcomes {
            if let Some(fixed) = rep.beta {
                assert_eq!(out.beta, fixed, "pinned torsion differs on {name}");
            }
            assert!(rep.b_candidates.contains(&out.b));
            let beta = usize::from(out.beta);
            let unified =
                rep.theta.r - rep.theta.a + max_term(rep.alpha, rep.delta_pm) + beta;
            assert_eq!(out.b, unified, "unified formula fails on {name}");
            if case_a {
                assert_eq!(out.beta, 0, "torsion must vanish on {name}");
                assert_eq!(out.b, rep.theta.r - rep.theta.a);
            } else {
                assert_eq!(out.b, rep.theta.r - rep.theta.a + 1 + beta);
            }
            if out.components > 0 {
                let via_components = topo.component_sum - topo.positive_count
                    + usize::from(rep.alpha.min(rep.delta_pm))
                    + rep.gamma
                    + beta;
                assert_eq!(out.b, via_components, "component formula fails on {name}");
            }
            assert!(out.b + 2 >= 2 * out.components, "Betti floor fails on {name}");
            if out.components > 0 {
                let lo = out.brauer_min.unwrap();
                let hi = out.brauer_max.unwrap();
                assert!(lo <= hi && hi <= out.b + 1 && lo >= out.b.max(1).min(lo));
                assert!(lo >= out.components, "Brauer floor fails on {name}");
                if out.epsilon == Some(1) {
                    assert_eq!((lo, hi), (out.b + 1, out.b + 1));
                }
            } else {
                assert!(out.brauer_min.is_none() && out.brauer_max.is_none());
            }
            outcome_count += 1;
        }
    }
    assert!(outcome_count >= 20);

    for profile in &default_profiles() {
        for out in &profile.outcomes {
            assert!(out.b + 2 >= 2 * out.components);
            if out.components > 0 {
                assert!(out.brauer_min.unwrap() >= out.components);
            }
        }
    }
    println!(
        "PASS: Betti and Brauer formulas agree across {outcome_count} catalog outcomes and every enumerated estimate"
    );
}
