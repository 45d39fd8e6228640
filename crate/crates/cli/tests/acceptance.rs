//! Acceptance gate: one test per shipped guarantee, each printing a
//! pass line with its runtime and enforcing a hard time limit. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::process::Command;
use std::time::Instant;

use boxgraphs::bounds::{asymmetric_bound_sweep, g_t, planar_sweep, Formula, SweepRun};
use boxgraphs::constructions::{
    digit_reversal_family, grouped_family, superlinear_family, trivial_family,
};
use boxgraphs::direction::{
    canonical_direction_vector, is_2_coherent, is_restricted, DirSet, DirectionVector,
};
use boxgraphs::family::BoxFamily;
use boxgraphs::hypergraph::{
    count_hyperedges, enumerate_hyperedges, find_biclique, BicliqueSearch, DEFAULT_NODE_BUDGET,
};
use boxgraphs::io::save_family;
use boxgraphs::oracle::{
    naive_count, naive_find_biclique, zarankiewicz_bruteforce, DEFAULT_ORACLE_BUDGET,
};
use boxgraphs::planar::{family_from_instance, planar_find_biclique, PlanarInstance};
use boxgraphs::random::{
    random_canonical_family, random_direction_vector, random_family_for, random_planar_instance,
    random_restricted_family, remap_axis_monotone, seeded, ChaCha8Rng, Rng,
};
use boxgraphs::rational::{rat, Rational};
use boxgraphs::reductions::{rescale_to_grid, separate, slice_restricted, transfer_to_canonical};

fn pass(name: &str, limit_s: f64, started: Instant) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("{name}: PASS ({elapsed:.2}s, limit {limit_s:.0}s)");
    assert!(
        elapsed < limit_s,
        "{name}: exceeded the {limit_s:.0}s limit at {elapsed:.2}s"
    );
}

fn verify_absent(fam: &BoxFamily, t: usize) -> bool {
    matches!(
        find_biclique(fam, t, DEFAULT_NODE_BUDGET).unwrap(),
        BicliqueSearch::Absent
    )
}

/// All direction vectors over d axes with r parts.
fn all_vectors(d: usize, r: usize) -> Vec<DirectionVector> {
    let masks = 1u32 << d;
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(sets) = stack.pop() {
        if sets.len() == r {
            out.push(DirectionVector::new(d, sets).unwrap());
            continue;
        }
        for mask in 0..masks {
            let axes: Vec<usize> = (1..=d).filter(|a| mask >> (a - 1) & 1 == 1).collect();
            let mut next = sets.clone();
            next.push(DirSet::from_axes(&axes).unwrap());
            stack.push(next);
        }
    }
    out
}

fn segments_vector(r: usize) -> DirectionVector {
    DirectionVector::new(1, vec![DirSet::from_axes(&[1]).unwrap(); r]).unwrap()
}

#[test]
fn classify_reproduces_the_reference_dichotomy() {
    let t0 = Instant::now();
    let cases = [
        ("1: {1} {1}", false),
        ("2: {1} {2}", false),
        ("2: {} {1,2}", true),
        ("3: {1,2,3} {1,2,3} {1,2,3}", true),
    ];
    for (literal, coherent) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_boxgraphs"))
            .args(["classify", literal])
            .output()
            .unwrap();
        assert!(out.status.success(), "{literal}");
        let text = String::from_utf8(out.stdout).unwrap();
        let want = if coherent {
            "2-coherent: yes"
        } else {
            "2-coherent: no"
        };
        assert!(text.contains(want), "{literal}: got\n{text}");
    }
    pass("dichotomy-classification", 1.0, t0);
}

#[test]
fn trivial_families_count_exactly_and_stay_free() {
    let t0 = Instant::now();
    for r in 2..=4usize {
        for f in [segments_vector(r), canonical_direction_vector(r).unwrap()] {
            for n in 2..=6usize {
                for t in 2..=3usize {
                    if t > n {
                        assert!(trivial_family(&f, n, t).is_err());
                        continue;
                    }
                    let rep = trivial_family(&f, n, t).unwrap();
                    let expected = (t as u64 - 1) * (n as u64).pow(r as u32 - 1);
                    assert_eq!(rep.claimed_edges, expected, "f={f} n={n} t={t}");
                    assert_eq!(
                        count_hyperedges(&rep.family).edge_count,
                        expected,
                        "f={f} n={n} t={t}"
                    );
                    assert!(verify_absent(&rep.family, t), "f={f} n={n} t={t}");
                }
            }
        }
    }
    pass("trivial-construction", 10.0, t0);
}

#[test]
fn grouped_families_hit_the_grouped_value_exactly() {
    let t0 = Instant::now();
    for r in 2..=3usize {
        let f = segments_vector(r);
        // every size tuple with entries divisible by r, entries ≤ 12
        let choices: Vec<usize> = (1..=12 / r).map(|q| q * r).collect();
        let mut stack = vec![Vec::new()];
        while let Some(n_vec) = stack.pop() {
            if n_vec.len() < r {
                for &c in &choices {
                    let mut next = n_vec.clone();
                    next.push(c);
                    stack.push(next);
                }
                continue;
            }
            for t in 2..=3usize {
                if n_vec.iter().any(|&n| n / r < t) {
                    assert!(grouped_family(&f, &n_vec, t).is_err());
                    continue;
                }
                let rep = grouped_family(&f, &n_vec, t).unwrap();
                let measured = count_hyperedges(&rep.family).edge_count;
                assert_eq!(measured, rep.claimed_edges, "n={n_vec:?} t={t}");

                let r_pow = (0..r - 1).fold(rat(1), |a, _| a * rat(r as i64));
                let target = g_t(&n_vec, t).unwrap() / r_pow;
                assert_eq!(
                    Rational::from_integer(measured.into()),
                    target,
                    "n={n_vec:?} t={t}"
                );
            }
        }
    }
    pass("grouped-construction", 10.0, t0);
}

#[test]
fn digit_reversal_families_have_the_logarithmic_profile() {
    let t0 = Instant::now();
    for (b, k) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
        let rep = digit_reversal_family(b, k).unwrap();
        let expected = u64::from(k) * b.pow(k);
        assert_eq!(rep.claimed_edges, expected, "b={b} k={k}");
        assert_eq!(count_hyperedges(&rep.family).edge_count, expected);

        let points = rep.family.part(0);
        let rects = rep.family.part(1);
        for rect in rects {
            let inside = points.iter().filter(|p| p.intersects(rect)).count();
            assert_eq!(inside as u64, b, "b={b} k={k}");
        }

        // exhaustive pair × pair scan: no two points share two rectangles
        for p1 in 0..points.len() {
            for p2 in p1 + 1..points.len() {
                for r1 in 0..rects.len() {
                    for r2 in r1 + 1..rects.len() {
                        let all = [p1, p2].iter().all(|&p| {
                            [r1, r2].iter().all(|&r| points[p].intersects(&rects[r]))
                        });
                        assert!(!all, "b={b} k={k}: pattern at {p1},{p2} × {r1},{r2}");
                    }
                }
            }
        }
    }

    let rep = digit_reversal_family(3, 3).unwrap();
    assert_eq!(rep.family.part_sizes(), vec![27, 27]);
    assert_eq!(rep.claimed_edges, 3 * 27);
    pass("digit-reversal-construction", 30.0, t0);
}

#[test]
fn the_lift_pipeline_multiplies_base_edges_for_every_coherent_vector() {
    let t0 = Instant::now();
    let mut coherent = Vec::new();
    for d in 1..=3usize {
        for r in 2..=3usize {
            for f in all_vectors(d, r) {
                if is_2_coherent(&f).coherent {
                    coherent.push(f);
                }
            }
        }
    }
    // 7 + 10 + 48 + 178 over (d,r) ∈ {2,3} × {2,3}; d=1 has none
    assert_eq!(coherent.len(), 243);

    for f in &coherent {
        let r = f.num_parts() as u32;
        for (b, k) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
            for t in 2..=3u64 {
                let rep = superlinear_family(f, t as usize, b, k).unwrap();
                let base_points = b.pow(k);
                let planar_edges = u64::from(k) * base_points * (t - 1) * (t - 1);
                let n_part = base_points * (t - 1);
                let expected = planar_edges * n_part.pow(r - 2);
                assert_eq!(rep.claimed_edges, expected, "f={f} b={b} k={k} t={t}");
                assert_eq!(
                    count_hyperedges(&rep.family).edge_count,
                    expected,
                    "f={f} b={b} k={k} t={t}"
                );
                assert!(
                    verify_absent(&rep.family, t as usize),
                    "f={f} b={b} k={k} t={t}"
                );
            }
        }
    }
    pass("lift-pipeline", 120.0, t0);
}

#[test]
fn reductions_preserve_indexed_edge_sets() {
    let t0 = Instant::now();
    let edges_of = |fam: &BoxFamily| enumerate_hyperedges(fam).edges.unwrap();
    let mut rng = seeded(61);
    let sizes_for = |rng: &mut ChaCha8Rng, r: usize| -> Vec<usize> {
        (0..r).map(|_| rng.gen_range(1..=6)).collect()
    };

    for _ in 0..100 {
        let d = rng.gen_range(2..=4);
        let sizes = sizes_for(&mut rng, d);
        let fam = random_canonical_family(&mut rng, d, &sizes, 7);
        let sep = separate(&fam).unwrap();
        assert_eq!(edges_of(&fam), edges_of(&sep));
    }

    for _ in 0..100 {
        let d = rng.gen_range(2..=4);
        let sizes = sizes_for(&mut rng, d);
        let sep = separate(&random_canonical_family(&mut rng, d, &sizes, 7)).unwrap();
        let grid = rescale_to_grid(&sep, None).unwrap();
        assert_eq!(edges_of(&sep), edges_of(&grid));
    }

    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let r = rng.gen_range(d.max(2)..=4);
        // complements pairwise disjoint singletons, flats scattered
        let mut positions: Vec<usize> = (0..r).collect();
        for i in (1..positions.len()).rev() {
            positions.swap(i, rng.gen_range(0..=i));
        }
        let mut sets = vec![DirSet::full(d); r];
        for (axis, &p) in (1..=d).zip(positions.iter()) {
            sets[p] = DirSet::full(d).without(axis);
        }
        let f = DirectionVector::new(d, sets).unwrap();
        let sizes = sizes_for(&mut rng, r);
        let fam = random_family_for(&mut rng, &f, &sizes, 0, 7);

        let out = transfer_to_canonical(&fam).unwrap();
        assert!(out.family.is_canonical());
        let mut pulled: Vec<Vec<usize>> = edges_of(&out.family)
            .into_iter()
            .map(|e| {
                let mut back = vec![0; r];
                for (newp, &idx) in e.iter().enumerate() {
                    back[out.part_origin[newp]] = idx;
                }
                back
            })
            .collect();
        pulled.sort();
        let mut original = edges_of(&fam);
        original.sort();
        assert_eq!(pulled, original);
    }
    pass("reduction-preservation", 60.0, t0);
}

#[test]
fn slicing_satisfies_the_accounting_identities() {
    let t0 = Instant::now();
    let mut rng = seeded(71);

    let audit = |fam: &BoxFamily, label: &str| {
        let grid = rescale_to_grid(fam, None).unwrap();
        assert!(is_restricted(&grid).unwrap(), "{label}");
        let sizes = grid.part_sizes();
        let dec = slice_restricted(&grid).unwrap();
        assert_eq!(
            dec.total_edges(),
            count_hyperedges(&grid).edge_count,
            "{label}"
        );
        assert_eq!(dec.total_transversals(), (sizes[0] * sizes[1]) as u64, "{label}");
        for slice in &dec.slices {
            assert!(slice.horizontals.len() <= sizes[2], "{label}");
        }
        for t in 2..=3 {
            if verify_absent(&grid, t) {
                for slice in &dec.slices {
                    assert!(
                        planar_find_biclique(&slice.instance(), t, DEFAULT_NODE_BUDGET)
                            .unwrap()
                            .is_absent(),
                        "{label}: slice at {:?}",
                        slice.anchor
                    );
                }
            }
        }
    };

    for trial in 0..50 {
        let sizes = [
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
        ];
        let fam = random_restricted_family(&mut rng, 3, &sizes);
        audit(&fam, &format!("trial {trial}"));
    }

    // fixed pencil configuration: 6 + 4 + 2 mutually crossing planes
    let f = DirectionVector::new(
        3,
        vec![
            DirSet::from_axes(&[2, 3]).unwrap(),
            DirSet::from_axes(&[1, 3]).unwrap(),
            DirSet::from_axes(&[1, 2]).unwrap(),
        ],
    )
    .unwrap();
    use boxgraphs::geometry::AxisBox;
    let p1 = (1..=6)
        .map(|i| AxisBox::from_ints(&[(i, i), (0, 5), (0, 4)]).unwrap())
        .collect();
    let p2 = (1..=4)
        .map(|j| AxisBox::from_ints(&[(0, 7), (j, j), (0, 4)]).unwrap())
        .collect();
    let p3 = [1i64, 9]
        .iter()
        .map(|&v| AxisBox::from_ints(&[(0, 7), (0, 5), (v, v)]).unwrap())
        .collect();
    let pencil = BoxFamily::new(f, vec![p1, p2, p3]).unwrap();
    assert_eq!(count_hyperedges(&pencil).edge_count, 24);
    let dec = slice_restricted(&pencil).unwrap();
    assert_eq!(dec.slices.len(), 9);
    assert_eq!(dec.total_edges(), 24);
    audit(&pencil, "pencil configuration");

    pass("slicing-accounting", 60.0, t0);
}

fn dump_violations(id: &str, run: &SweepRun, fams: &[BoxFamily]) {
    if run.violations.is_empty() {
        return;
    }
    let dir = std::env::temp_dir().join("boxgraphs-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    for &i in &run.violations {
        let path = dir.join(format!("violation-{id}-{i}.json"));
        save_family(&path, &fams[i]).unwrap();
        eprintln!("{id}: counterexample written to {}", path.display());
    }
    panic!("{id}: {} violations among {} instances", run.violations.len(), fams.len());
}

#[test]
fn bound_sweeps_report_zero_violations() {
    let t0 = Instant::now();
    let mut rng = seeded(81);

    let keep_free = |rng: &mut ChaCha8Rng,
                     t: usize,
                     count: usize,
                     draw: &mut dyn FnMut(&mut ChaCha8Rng) -> BoxFamily|
     -> Vec<BoxFamily> {
        let mut out = Vec::new();
        while out.len() < count {
            let fam = draw(rng);
            if matches!(
                find_biclique(&fam, t, DEFAULT_NODE_BUDGET).unwrap(),
                BicliqueSearch::Absent
            ) {
                out.push(fam);
            }
        }
        out
    };

    let line = DirSet::from_axes(&[1]).unwrap();
    let sz = |rng: &mut ChaCha8Rng| rng.gen_range(3..=6usize);

    for t in 2..=3usize {
        // 1-D families with any point/segment mix
        let mut draw = |rng: &mut ChaCha8Rng| {
            let r = rng.gen_range(2..=3usize);
            let sets = (0..r)
                .map(|_| if rng.gen_bool(0.5) { line } else { DirSet::empty() })
                .collect();
            let f = DirectionVector::new(1, sets).unwrap();
            let sizes: Vec<usize> = (0..r).map(|_| sz(rng)).collect();
            random_family_for(rng, &f, &sizes, 0, 12)
        };
        let fams = keep_free(&mut rng, t, 250, &mut draw);
        let run = asymmetric_bound_sweep(Formula::OneDim, fams.clone(), t, DEFAULT_NODE_BUDGET)
            .unwrap();
        dump_violations("one-dim", &run, &fams);

        // points against segments
        let mut draw = |rng: &mut ChaCha8Rng| {
            let f = DirectionVector::new(1, vec![DirSet::empty(), line]).unwrap();
            let sizes = [sz(rng), sz(rng)];
            random_family_for(rng, &f, &sizes, 0, 12)
        };
        let fams = keep_free(&mut rng, t, 250, &mut draw);
        let run = asymmetric_bound_sweep(Formula::PointSeg, fams.clone(), t, DEFAULT_NODE_BUDGET)
            .unwrap();
        dump_violations("point-seg", &run, &fams);

        // segments against segments
        let mut draw = |rng: &mut ChaCha8Rng| {
            let f = DirectionVector::new(1, vec![line, line]).unwrap();
            let sizes = [sz(rng), sz(rng)];
            random_family_for(rng, &f, &sizes, 0, 12)
        };
        let fams = keep_free(&mut rng, t, 250, &mut draw);
        let run = asymmetric_bound_sweep(Formula::SegSeg, fams.clone(), t, DEFAULT_NODE_BUDGET)
            .unwrap();
        dump_violations("seg-seg", &run, &fams);

        // three parts of segments
        let mut draw = |rng: &mut ChaCha8Rng| {
            let f = DirectionVector::new(1, vec![line; 3]).unwrap();
            let sizes = [sz(rng), sz(rng), sz(rng)];
            random_family_for(rng, &f, &sizes, 0, 12)
        };
        let fams = keep_free(&mut rng, t, 250, &mut draw);
        let run =
            asymmetric_bound_sweep(Formula::RSeg, fams.clone(), t, DEFAULT_NODE_BUDGET).unwrap();
        dump_violations("r-seg", &run, &fams);

        // planar crossing instances
        let mut insts: Vec<PlanarInstance> = Vec::new();
        while insts.len() < 250 {
            let (m, n) = (sz(&mut rng), sz(&mut rng));
            let inst = random_planar_instance(&mut rng, m, n, 24);
            if planar_find_biclique(&inst, t, DEFAULT_NODE_BUDGET)
                .unwrap()
                .is_absent()
            {
                insts.push(inst);
            }
        }
        let run = planar_sweep(insts.clone(), t, DEFAULT_NODE_BUDGET).unwrap();
        if !run.violations.is_empty() {
            let fams: Vec<BoxFamily> = insts
                .iter()
                .map(|i| family_from_instance(i).unwrap())
                .collect();
            dump_violations("planar-27t", &run, &fams);
        }

        // grid families from the diagonal-anchor generator
        let mut draw = |rng: &mut ChaCha8Rng| {
            let sizes = [sz(rng), sz(rng), sz(rng)];
            random_restricted_family(rng, 3, &sizes)
        };
        let fams = keep_free(&mut rng, t, 250, &mut draw);
        let run = asymmetric_bound_sweep(Formula::Restricted27, fams.clone(), t, DEFAULT_NODE_BUDGET)
            .unwrap();
        dump_violations("restricted-27", &run, &fams);
    }
    pass("bound-compliance", 300.0, t0);
}

#[test]
fn oracle_agrees_with_naive_reference_counts() {
    let t0 = Instant::now();
    let f = DirectionVector::new(1, vec![DirSet::from_axes(&[1]).unwrap(); 2]).unwrap();

    let res = zarankiewicz_bruteforce(&f, &[2, 2], 2, None, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!(res.exhausted);
    assert_eq!(res.z_value, 3);
    assert!(verify_absent(&res.witness_family, 2));

    let res = zarankiewicz_bruteforce(&f, &[1, 1], 2, None, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!(res.exhausted);
    assert_eq!(res.z_value, 1);

    let mut rng = seeded(91);
    let small = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(1..=2);
        let r = rng.gen_range(2..=3);
        let f = random_direction_vector(rng, d, r);
        let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=6)).collect();
        random_family_for(rng, &f, &sizes, 0, 9)
    };

    for trial in 0..1000 {
        let fam = small(&mut rng);
        assert_eq!(
            naive_count(&fam).unwrap(),
            count_hyperedges(&fam).edge_count,
            "trial {trial}"
        );
    }

    for trial in 0..500 {
        let fam = small(&mut rng);
        let t = rng.gen_range(2..=3);
        let naive = naive_find_biclique(&fam, t).unwrap();
        match find_biclique(&fam, t, DEFAULT_NODE_BUDGET).unwrap() {
            BicliqueSearch::Found(_) => assert!(naive.is_some(), "trial {trial}"),
            BicliqueSearch::Absent => assert!(naive.is_none(), "trial {trial}"),
            BicliqueSearch::BudgetExceeded { .. } => panic!("trial {trial}: budget"),
        }
    }
    pass("oracle-exactness", 300.0, t0);
}

#[test]
fn monotone_remaps_preserve_edge_counts() {
    let t0 = Instant::now();
    let mut rng = seeded(101);
    for trial in 0..200 {
        let d = rng.gen_range(1..=3);
        let r = rng.gen_range(2..=4);
        let f = random_direction_vector(&mut rng, d, r);
        let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=5)).collect();
        let fam = random_family_for(&mut rng, &f, &sizes, 0, 8);
        let before = count_hyperedges(&fam).edge_count;

        let axis = rng.gen_range(1..=d);
        let mapped = remap_axis_monotone(&mut rng, &fam, axis);
        assert_eq!(count_hyperedges(&mapped).edge_count, before, "trial {trial}");
    }
    pass("discretization-stability", 30.0, t0);
}
