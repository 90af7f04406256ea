//! Acceptance suite: every quantitative claim the engine is responsible
//! for, run end to end on the catalog at desk scale. One test per
//! criterion; each prints a PASS line with the scope it covered.

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cayley::bounds::{
    self, extraspecial_gap_survey, lemma1_check, neumann_check, podoski_szegedy_check,
    proposition2_check, theorem_b_check,
};
use cayley::catalog::{build, catalog_suite, parse_descriptor};
use cayley::group::{Elem, GroupTable};
use cayley::invariants::{self, commutator_set, conjugacy_class, exponent, second_center};
use cayley::isoclinism::{
    are_isoclinic, is_stem, stem_reduce, verify_isoclinism, IsoclinismWitness,
};
use cayley::{DEFAULT_LOG2_TOLERANCE, DEFAULT_ORDER_CAP, DEFAULT_SEARCH_CAP};

/// Brute-force re-implementations of the structural invariants, straight
/// from the definitions and independent of the main computation paths
/// (fixed-point closure instead of worklists, commutator-based second
/// center instead of center-of-quotient).
mod oracle {
    use cayley::group::{Elem, GroupTable};

    pub fn center(g: &GroupTable) -> Vec<Elem> {
        let mut out = Vec::new();
        for z in 0..g.order() as Elem {
            let mut commutes = true;
            for x in 0..g.order() as Elem {
                if g.mul(z, x) != g.mul(x, z) {
                    commutes = false;
                    break;
                }
            }
            if commutes {
                out.push(z);
            }
        }
        out
    }

    /// Every commutator, then a full pairwise-product fixed point.
    pub fn gamma2(g: &GroupTable) -> Vec<Elem> {
        let mut set = vec![false; g.order()];
        set[0] = true;
        for x in 0..g.order() as Elem {
            for y in 0..g.order() as Elem {
                set[g.commutator(x, y) as usize] = true;
            }
        }
        loop {
            let mut changed = false;
            let current: Vec<Elem> = (0..g.order() as Elem)
                .filter(|&e| set[e as usize])
                .collect();
            for &a in &current {
                if !set[g.inv(a) as usize] {
                    set[g.inv(a) as usize] = true;
                    changed = true;
                }
                for &b in &current {
                    let p = g.mul(a, b);
                    if !set[p as usize] {
                        set[p as usize] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..g.order() as Elem).filter(|&e| set[e as usize]).collect()
    }

    /// Second center through commutators: x with every `[x, g]` central.
    pub fn second_center(g: &GroupTable) -> Vec<Elem> {
        let z = center(g);
        let central = |e: Elem| z.binary_search(&e).is_ok();
        (0..g.order() as Elem)
            .filter(|&x| (0..g.order() as Elem).all(|y| central(g.commutator(x, y))))
            .collect()
    }

    /// Conjugacy classes as sorted member lists, ordered by least member.
    pub fn classes(g: &GroupTable) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for x in 0..g.order() as Elem {
            if seen[x as usize] {
                continue;
            }
            let mut class: Vec<Elem> =
                (0..g.order() as Elem).map(|y| g.conjugate(x, y)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y as usize] = true;
            }
            out.push(class);
        }
        out
    }
}

fn suite(max_order: u64) -> Vec<(String, GroupTable)> {
    catalog_suite(max_order)
        .into_iter()
        .map(|d| (d.to_string(), build(&d).unwrap()))
        .collect()
}

fn table(desc: &str) -> GroupTable {
    build(&parse_descriptor(desc).unwrap()).unwrap()
}

#[test]
fn criterion_01_commutator_set_size_equals_class_size() {
    let start = Instant::now();
    let groups = suite(256);
    let mut elements = 0usize;
    for (name, g) in &groups {
        for x in 0..g.order() as Elem {
            assert_eq!(
                commutator_set(g, x).len(),
                conjugacy_class(g, x).len(),
                "{name}: |[x,G]| != |x^G| at x = {x}"
            );
            elements += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "identity scan took {elapsed:?}, budget is 10 s");
    println!(
        "criterion 01 (|[x,G]| = |x^G|): PASS - {} elements across {} groups in {elapsed:?}",
        elements,
        groups.len()
    );
}

#[test]
fn criterion_02_neumann_bound_with_equality_witnesses() {
    let groups = suite(256);
    for (name, g) in &groups {
        let r = neumann_check(g, None).unwrap();
        assert!(r.holds, "{name}: Neumann bound failed: {r:?}");
        assert!(r.rhs_exact.is_some() || r.lhs <= 1, "{name}: bound must be exact");
    }
    let tight = [("D8", 4), ("ES(3,1,+)", 9), ("ES(3,1,-)", 9), ("ES(3,2,+)", 81)];
    for (desc, value) in tight {
        let r = neumann_check(&table(desc), None).unwrap();
        assert_eq!(r.lhs, value, "{desc}");
        assert_eq!(r.rhs_exact, Some(value as u128), "{desc}: equality expected");
        assert!(r.is_tight(), "{desc}");
    }
    let r = neumann_check(&table("ES(3,2,+)"), None).unwrap();
    assert_eq!(r.ingredients["k"], "4", "ES(3,2,+) uses its four standard generators");
    println!(
        "criterion 02 (Neumann |G/Z| <= |gamma2|^k): PASS - {} groups, equality on D8, ES(3,1,+-), ES(3,2,+)",
        groups.len()
    );
}

#[test]
fn criterion_03_podoski_szegedy_bound() {
    let groups = suite(256);
    let mut exact_cases = 0;
    for (name, g) in &groups {
        let r = podoski_szegedy_check(g, DEFAULT_LOG2_TOLERANCE).unwrap();
        assert!(r.holds, "{name}: bound failed: {r:?}");
        if r.ingredients["n"] == "1" {
            assert_eq!(r.rhs_exact, Some(1), "{name}: n = 1 must be compared exactly");
            assert_eq!(r.lhs, 1, "{name}: class <= 2 forces |G/Z2| = 1");
            exact_cases += 1;
        }
    }
    println!(
        "criterion 03 (Podoski-Szegedy |G/Z2| <= n^(2 log2 n)): PASS - {} groups, {} exact n=1 cases",
        groups.len(),
        exact_cases
    );
}

#[test]
fn criterion_04_theorem_b_bound_and_proof_steps() {
    let groups = suite(256);
    for (name, g) in &groups {
        let r = theorem_b_check(g, DEFAULT_LOG2_TOLERANCE).unwrap();
        assert!(r.holds, "{name}: combined bound failed: {r:?}");
        assert_eq!(r.hypotheses.len(), 5, "{name}: five verified proof steps expected");
        assert!(r.hypotheses.iter().all(|h| h.satisfied), "{name}");
    }
    let r = theorem_b_check(&table("D8"), DEFAULT_LOG2_TOLERANCE).unwrap();
    assert_eq!(r.lhs, 4);
    assert_eq!(r.rhs_exact, Some(4), "D8 attains the bound with equality");

    // ord(xZ) = exp([x,G]) for every second-center element of every group
    let mut checked = 0usize;
    for (name, g) in &groups {
        let z = invariants::center(g);
        let z2 = second_center(g);
        let q = g.quotient(&z).unwrap();
        for &x in z2.members() {
            let coset_order = q.table.element_order(q.projection.apply(x)) as u64;
            let exp = exponent(g, &commutator_set(g, x));
            assert_eq!(coset_order, exp, "{name}: element {x}");
            checked += 1;
        }
    }
    println!(
        "criterion 04 (combined bound + proof steps): PASS - {} groups, ord(xZ) = exp([x,G]) for {} second-center elements",
        groups.len(),
        checked
    );
}

#[test]
fn criterion_05_proposition_2_bound() {
    let groups = suite(256);
    for (name, g) in &groups {
        let r = proposition2_check(g, None).unwrap();
        assert!(r.holds, "{name}: bound failed: {r:?}");
        assert!(r.rhs_exact.is_some() || r.lhs <= 1, "{name}: bound must be exact");
    }
    for desc in ["D8", "S3"] {
        let r = proposition2_check(&table(desc), None).unwrap();
        assert!(r.is_tight(), "{desc}: equality expected, got {r:?}");
    }
    println!(
        "criterion 05 (|G/Z| <= prod |[x_i,G]|): PASS - {} groups, equality on D8 and S3",
        groups.len()
    );
}

#[test]
fn criterion_06_lemma_1_randomized_generator_choices() {
    let groups = suite(128);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let mut trials = 0usize;
    for (name, g) in &groups {
        for _ in 0..100 {
            let len = rng.gen_range(0..=3usize);
            let h_gens: Vec<Elem> =
                (0..len).map(|_| rng.gen_range(0..g.order()) as Elem).collect();
            let r = lemma1_check(g, &h_gens).unwrap();
            assert!(r.holds, "{name}: lemma 1 failed for {h_gens:?}: {r:?}");
            assert!(r.rhs_exact.is_some(), "{name}: comparison must be exact");
            trials += 1;
        }
    }
    println!(
        "criterion 06 (|G:C(H)| <= prod |[h_i,G]|): PASS - {} seeded trials across {} groups",
        trials,
        groups.len()
    );
}

#[test]
fn criterion_07_extraspecial_gap_survey() {
    let start = Instant::now();
    let rows = extraspecial_gap_survey(3, 3, DEFAULT_ORDER_CAP, DEFAULT_LOG2_TOLERANCE)
        .unwrap();
    let elapsed = start.elapsed();
    assert_eq!(rows.len(), 3);
    let expected = [(27u64, 9u64), (243, 81), (2187, 729)];
    for (row, (order, quotient)) in rows.iter().zip(expected) {
        assert_eq!(row.order, order);
        assert_eq!(row.gamma2_order, 3, "gamma2 stays at p = 3 along the family");
        assert_eq!(row.order / row.center_order, quotient);
        assert!(row.holds.values().all(|&h| h), "all checks hold on {}", row.descriptor);
    }
    assert!(elapsed.as_secs() < 60, "survey took {elapsed:?}, budget is 60 s");
    println!(
        "criterion 07 (extraspecial gap, p = 3, m <= 3): PASS - |gamma2| constant 3, |G/Z| = 9, 81, 729 in {elapsed:?}"
    );
}

#[test]
fn criterion_08_isoclinism() {
    // D8 ~ Q8 with independently re-verified witness
    let d8 = table("D8");
    let q8 = table("Q8");
    let w_d8_q8 = are_isoclinic(&d8, &q8, DEFAULT_SEARCH_CAP).unwrap().expect("D8 ~ Q8");
    verify_isoclinism(&d8, &q8, &w_d8_q8).unwrap();

    // all abelian catalog groups are pairwise isoclinic
    let abelian: Vec<(String, GroupTable)> = suite(256)
        .into_iter()
        .filter(|(_, g)| g.is_abelian())
        .collect();
    assert!(abelian.len() >= 19);
    let mut pairs = 0usize;
    for i in 0..abelian.len() {
        for j in (i + 1)..abelian.len() {
            let w = are_isoclinic(&abelian[i].1, &abelian[j].1, DEFAULT_SEARCH_CAP)
                .unwrap()
                .unwrap_or_else(|| {
                    panic!("{} and {} must be isoclinic", abelian[i].0, abelian[j].0)
                });
            assert!(w.verified);
            pairs += 1;
        }
    }

    // a direct abelian factor does not change the class; S3 does
    let d8c2 = table("D8 x C2");
    let w_d8_d8c2 =
        are_isoclinic(&d8, &d8c2, DEFAULT_SEARCH_CAP).unwrap().expect("D8 ~ D8 x C2");
    verify_isoclinism(&d8, &d8c2, &w_d8_d8c2).unwrap();
    assert!(are_isoclinic(&d8, &table("S3"), DEFAULT_SEARCH_CAP).unwrap().is_none());

    // equivalence relation on the fixed triple (D8, Q8, D8 x C2)
    let identity = are_isoclinic(&d8, &d8, DEFAULT_SEARCH_CAP).unwrap().expect("reflexive");
    verify_isoclinism(&d8, &d8, &identity).unwrap();
    verify_isoclinism(&q8, &d8, &w_d8_q8.invert()).unwrap();
    let w_q8_d8c2: IsoclinismWitness = w_d8_q8.invert().compose(&w_d8_d8c2);
    verify_isoclinism(&q8, &d8c2, &w_q8_d8c2).unwrap();
    println!(
        "criterion 08 (isoclinism): PASS - D8 ~ Q8 verified, {pairs} abelian pairs, D8 ~ D8xC2, D8 !~ S3, equivalence laws on the triple"
    );
}

#[test]
fn criterion_09_stem_reduction() {
    let d8 = table("D8");
    let r = stem_reduce(&table("C2 x D8"), DEFAULT_SEARCH_CAP).unwrap();
    assert!(r.reached_stem);
    assert_eq!(r.quotient.table.order(), 8);
    assert!(is_stem(&r.quotient.table));
    assert!(
        are_isoclinic(&r.quotient.table, &d8, DEFAULT_SEARCH_CAP).unwrap().is_some(),
        "the order-8 stem of C2 x D8 is isoclinic to D8"
    );

    for desc in ["D8", "Q8", "ES(3,1,+)"] {
        let g = table(desc);
        let r = stem_reduce(&g, DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.reached_stem, "{desc}");
        assert!(r.quotient.kernel.is_trivial(), "{desc}: already stem, kernel must be trivial");
        assert_eq!(r.quotient.table.order(), g.order(), "{desc}");
    }

    let mut reduced = 0usize;
    for (name, g) in suite(64) {
        let r = stem_reduce(&g, DEFAULT_SEARCH_CAP).unwrap();
        assert!(r.reached_stem, "{name}: catalog groups reach a stem group");
        assert!(is_stem(&r.quotient.table), "{name}: stem output must satisfy the condition");
        verify_isoclinism(&g, &r.quotient.table, &r.witness).unwrap();
        reduced += 1;
    }
    println!(
        "criterion 09 (stem reduction): PASS - C2 x D8 -> order 8 stem ~ D8; identity on stems; {reduced} catalog reductions verified"
    );
}

#[test]
fn criterion_10_oracle_equivalence() {
    let groups = suite(24);
    for (name, g) in &groups {
        assert_eq!(
            invariants::center(g).members(),
            &oracle::center(g)[..],
            "{name}: center"
        );
        assert_eq!(
            invariants::derived_subgroup(g).members(),
            &oracle::gamma2(g)[..],
            "{name}: derived subgroup"
        );
        assert_eq!(
            second_center(g).members(),
            &oracle::second_center(g)[..],
            "{name}: second center"
        );
        assert_eq!(
            invariants::commutator_data(g).classes,
            oracle::classes(g),
            "{name}: conjugacy classes"
        );
    }
    println!(
        "criterion 10 (oracle equivalence): PASS - center/gamma2/Z2/classes match on {} groups of order <= 24",
        groups.len()
    );
}

#[test]
fn survey_rows_hold_everywhere_on_the_small_catalog() {
    for row in bounds::survey_catalog(64, DEFAULT_ORDER_CAP, DEFAULT_LOG2_TOLERANCE).unwrap()
    {
        assert!(
            row.holds.values().all(|&h| h),
            "{}: some check failed: {:?}",
            row.descriptor,
            row.holds
        );
    }
}
