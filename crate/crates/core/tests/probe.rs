use enriq::catalog::{self, e8, tau_reference};
use enriq::enriques::analyze;
use enriq::invol::Involution;
use enriq::linalg::{Int, IntMatrix};

fn e8_gram_i64() -> [[i64; 8]; 8] {
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
        g[i - 1][j - 1] = 1;
        g[j - 1][i - 1] = 1;
    }
    g
}

fn dot(g: &[[i64; 8]; 8], v: &[i64; 8], w: &[i64; 8]) -> i64 {
    let mut s = 0;
    for i in 0..8 {
        for j in 0..8 {
            s += v[i] * g[i][j] * w[j];
        }
    }
    s
}

#[test]
fn probe_catalog() {
    let tau = tau_reference();
    for entry in catalog::standard_triples() {
        let sigma = entry.sigma();
        match analyze(&tau, &sigma) {
            Ok(r) => println!(
                "OK  {:<18} sigma={:?} ts={:?} theta={:?} exp={:?} alpha={} dpm={} pos={:?} geom={}",
                entry.name,
                r.sigma.as_tuple(),
                r.tau_sigma.as_tuple(),
                r.theta.as_tuple(),
                entry.expected_theta,
                r.alpha,
                r.delta_pm,
                r.topology.as_ref().map(|t| t.positive_count),
                r.geometric,
            ),
            Err(e) => println!("ERR {:<18} {e}", entry.name),
        }
    }
}

#[test]
fn probe_root_quadruple() {
    let g = e8_gram_i64();
    let mut roots: Vec<[i64; 8]> = Vec::new();
    let mut frontier: Vec<[i64; 8]> = Vec::new();
    for i in 0..8 {
        let mut v = [0i64; 8];
        v[i] = 1;
        frontier.push(v);
    }
    let mut seen = std::collections::BTreeSet::new();
    while let Some(v) = frontier.pop() {
        if !seen.insert(v) {
            continue;
        }
        roots.push(v);
        for i in 0..8 {
            let mut e = [0i64; 8];
            e[i] = 1;
            let c = dot(&g, &v, &e);
            let mut w = v;
            w[i] += c;
            if !seen.contains(&w) {
                frontier.push(w);
            }
        }
        let neg = v.map(|x| -x);
        if !seen.contains(&neg) {
            frontier.push(neg);
        }
    }
    println!("root count: {}", roots.len());
    let pos: Vec<[i64; 8]> = roots
        .iter()
        .copied()
        .filter(|v| *v > [0i64; 8].map(|_| i64::MIN) && v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    println!("positive roots: {}", pos.len());
    let mut found = None;
    'outer: for a in 0..pos.len() {
        for b in (a + 1)..pos.len() {
            if dot(&g, &pos[a], &pos[b]) != 0 {
                continue;
            }
            for c in (b + 1)..pos.len() {
                if dot(&g, &pos[a], &pos[c]) != 0 || dot(&g, &pos[b], &pos[c]) != 0 {
                    continue;
                }
                for d in (c + 1)..pos.len() {
                    if dot(&g, &pos[a], &pos[d]) != 0
                        || dot(&g, &pos[b], &pos[d]) != 0
                        || dot(&g, &pos[c], &pos[d]) != 0
                    {
                        continue;
                    }
                    let all_even = (0..8).all(|i| {
                        (pos[a][i] + pos[b][i] + pos[c][i] + pos[d][i]) % 2 == 0
                    });
                    if all_even {
                        found = Some([pos[a], pos[b], pos[c], pos[d]]);
                        break 'outer;
                    }
                }
            }
        }
    }
    let quad = found.expect("no D4-spanning quadruple found");
    println!("quadruple: {quad:?}");

    let lattice = e8();
    let mut m = IntMatrix::identity(8);
    for root in quad {
        let mut s = IntMatrix::identity(8);
        let gr = lattice.gram();
        for i in 0..8 {
            for j in 0..8 {
                let mut acc = Int::from(0);
                for k in 0..8 {
                    acc = &acc + &(&gr[(k, j)] * &Int::from(root[k]));
                }
                s[(i, j)] = &s[(i, j)] + &(&Int::from(root[i]) * &acc);
            }
        }
        m = m.mul(&s);
    }
    let inv = Involution::new(&lattice, m.clone()).expect("reflection product is an involution");
    println!("fixed invariants: {:?}", inv.invariants().unwrap().as_tuple());
    println!("matrix rows:");
    for i in 0..8 {
        let row: Vec<String> = (0..8).map(|j| m[(i, j)].to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

#[test]
fn probe_d8_mix() {
    use enriq::lattice::Lattice;
    use enriq::linalg::RatMatrix;

    let u = catalog::hyperbolic_plane();
    let e8l = e8();
    let gram = IntMatrix::block_diag(&[u.gram(), e8l.gram()]);
    let amb = Lattice::new("UE8", gram.clone()).unwrap();

    let mut basis: Vec<Vec<i64>> = Vec::new();
    for node in [2usize, 3, 4, 5, 6, 7, 8] {
        let mut v = vec![0i64; 10];
        v[1 + node] = 1;
        basis.push(v);
    }
    let omega = [2i64, 3, 4, 6, 5, 4, 3, 2];
    let mut a0 = vec![0i64; 10];
    a0[0] = 1;
    for (i, w) in omega.iter().enumerate() {
        a0[2 + i] = -w;
    }
    basis.push(a0);
    let b = IntMatrix::from_rows(&basis).transpose();
    let s = b.transpose().mul(&gram).mul(&b);
    println!("span gram det: {:?}", s.det().unwrap());

    let sr = s.to_rational();
    let sinv = sr.inverse().expect("span gram invertible");
    let p = b
        .to_rational()
        .mul(&sinv)
        .mul(&b.transpose().to_rational())
        .mul(&gram.to_rational());
    let mut theta = IntMatrix::zero(10, 10);
    let mut integral = true;
    for i in 0..10 {
        for j in 0..10 {
            let two_p = &p[(i, j)] + &p[(i, j)];
            let entry = if i == j {
                &two_p - &enriq::linalg::rat(1, 1)
            } else {
                two_p
            };
            if !entry.is_integer() {
                integral = false;
            } else {
                theta[(i, j)] = entry.to_integer();
            }
        }
    }
    assert!(integral, "2P - 1 is not integral");
    let inv = Involution::new(&amb, theta.clone()).expect("mixing involution valid");
    println!("theta~ fixed invariants: {:?}", inv.invariants().unwrap().as_tuple());
    println!(
        "theta~ anti invariants: {:?}",
        inv.negated().invariants().unwrap().as_tuple()
    );

    // assemble sigma = Neg on U1, antidiagonal theta~ across the two copies
    let c1: [usize; 10] = [2, 3, 6, 7, 8, 9, 10, 11, 12, 13];
    let c2: [usize; 10] = [4, 5, 14, 15, 16, 17, 18, 19, 20, 21];
    let mut sm = IntMatrix::zero(22, 22);
    sm[(0, 0)] = Int::from(-1);
    sm[(1, 1)] = Int::from(-1);
    for i in 0..10 {
        for j in 0..10 {
            sm[(c1[i], c2[j])] = theta[(i, j)].clone();
            sm[(c2[i], c1[j])] = theta[(i, j)].clone();
        }
    }
    let k3 = catalog::k3_lattice();
    let sigma = Involution::new(&k3, sm).expect("sigma valid");
    let tau = tau_reference();
    assert!(tau.commutes_with(&sigma), "does not commute");
    match analyze(&tau, &sigma) {
        Ok(r) => println!(
            "d8-mix OK: sigma={:?} ts={:?} theta={:?} alpha={} dpm={} geom={}",
            r.sigma.as_tuple(),
            r.tau_sigma.as_tuple(),
            r.theta.as_tuple(),
            r.alpha,
            r.delta_pm,
            r.geometric
        ),
        Err(e) => println!("d8-mix ERR: {e}"),
    }
    let _ = RatMatrix::identity(1);
}
