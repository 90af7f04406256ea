//! Executable predicates for the quantitative bounds relating `|G/Z(G)|`,
//! `|G/Z2(G)|` and commutator structure, each producing an auditable
//! [`BoundReport`], plus the extraspecial gap survey.
//!
//! All bounds hold for every finite group; a `holds = false` verdict on a
//! verified table means an implementation bug, not a counterexample.
//! Comparisons against `n^(2 log2 n)` run in the log2 domain with a fixed
//! tolerance, switching to exact integer comparison whenever the bound is
//! an integer (`n = 1` or a power of two with small enough exponent).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{self, GroupDescriptor, Sign};
use crate::group::{Elem, GroupTable};
use crate::invariants::{
    self, abelian_basis, center, centralizer_of_subgroup, commutator_data, commutator_set,
    conjugacy_class, exponent, generating_cosets, second_center,
};
use crate::{Error, Result};

/// Which statement a [`BoundReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    SchurWitness,
    Neumann,
    PodoskiSzegedy,
    TheoremB,
    Proposition2,
    Lemma1,
    Bfc,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::SchurWitness,
        TheoremId::Neumann,
        TheoremId::PodoskiSzegedy,
        TheoremId::TheoremB,
        TheoremId::Proposition2,
        TheoremId::Lemma1,
        TheoremId::Bfc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::SchurWitness => "SCHUR_WITNESS",
            TheoremId::Neumann => "NEUMANN",
            TheoremId::PodoskiSzegedy => "PODOSKI_SZEGEDY",
            TheoremId::TheoremB => "THEOREM_B",
            TheoremId::Proposition2 => "PROPOSITION_2",
            TheoremId::Lemma1 => "LEMMA_1",
            TheoremId::Bfc => "BFC",
        }
    }

    /// Parses the serialized form (case-insensitive, `-` and `_` alike).
    pub fn parse(text: &str) -> Option<TheoremId> {
        let norm = text.to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL.into_iter().find(|id| id.as_str() == norm)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named hypothesis or verified proof step inside a report.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub witness: String,
}

impl Hypothesis {
    fn holds(name: impl Into<String>, witness: impl Into<String>) -> Hypothesis {
        Hypothesis { name: name.into(), satisfied: true, witness: witness.into() }
    }
}

/// Verdict for one theorem instance. `rhs_log2` is the bound in the log2
/// domain when the statement is quantitative (`None` for the qualitative
/// witness reports); `rhs_exact` is additionally set whenever the bound is
/// an integer that fits in `u128`, in which case `holds` is decided by
/// exact integer comparison.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub lhs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_log2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_exact: Option<u128>,
    pub holds: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub ingredients: BTreeMap<String, String>,
}

impl BoundReport {
    fn qualitative(theorem_id: TheoremId, lhs: u64) -> BoundReport {
        BoundReport {
            theorem_id,
            lhs,
            rhs_log2: None,
            rhs_exact: None,
            holds: true,
            hypotheses: Vec::new(),
            ingredients: BTreeMap::new(),
        }
    }

    fn quantitative(
        theorem_id: TheoremId,
        lhs: u64,
        rhs_exact: Option<u128>,
        rhs_log2: f64,
        tolerance: f64,
    ) -> BoundReport {
        let holds = match rhs_exact {
            Some(r) => lhs as u128 <= r,
            None => (lhs as f64).log2() <= rhs_log2 + tolerance,
        };
        BoundReport {
            theorem_id,
            lhs,
            rhs_log2: Some(rhs_log2),
            rhs_exact,
            holds,
            hypotheses: Vec::new(),
            ingredients: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.ingredients.insert(key.to_string(), value.to_string());
        self
    }

    /// True when the bound is exact and attained with equality.
    pub fn is_tight(&self) -> bool {
        self.rhs_exact == Some(self.lhs as u128)
    }

    /// Ratio `lhs / rhs` when the bound is an exact integer.
    pub fn tightness(&self) -> Option<f64> {
        self.rhs_exact.map(|r| self.lhs as f64 / r as f64)
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Product as `u128` unless it overflows. Overflow means the bound exceeds
/// 2^128 while group orders stay below 2^16, so such bounds hold trivially.
fn checked_product(factors: &[u64]) -> Option<u128> {
    factors.iter().try_fold(1u128, |acc, &f| acc.checked_mul(f as u128))
}

fn log2_sum(factors: &[u64]) -> f64 {
    factors.iter().map(|&f| (f as f64).log2()).sum()
}

/// `n^(2 log2 n)` as an exact integer when that is cheap: `n = 1`, or
/// `n = 2^a` with `2a^2 <= 127` (then the bound is `2^(2a^2)`).
fn power_bound_exact(n: u64) -> Option<u128> {
    if n == 1 {
        return Some(1);
    }
    if n.is_power_of_two() {
        let a = n.trailing_zeros();
        let e = 2 * a * a;
        if e <= 127 {
            return Some(1u128 << e);
        }
    }
    None
}

fn power_bound_log2(n: u64) -> f64 {
    let l = (n as f64).log2();
    2.0 * l * l
}

/// Qualitative witness for the center-quotient/derived-subgroup link:
/// reports `|G/Z(G)|` and `|gamma_2(G)|` side by side. Always holds on
/// finite input.
pub fn schur_witness(g: &GroupTable) -> BoundReport {
    let z = center(g);
    let gamma2 = invariants::derived_subgroup(g);
    BoundReport::qualitative(TheoremId::SchurWitness, (g.order() / z.order()) as u64)
        .with("centerOrder", z.order())
        .with("centerQuotientOrder", g.order() / z.order())
        .with("gamma2Order", gamma2.order())
}

/// `|G/Z(G)| <= |gamma_2(G)|^k` for a group generated by `k` elements.
/// Uses the recorded generators unless a set is supplied; a non-generating
/// set is a hypothesis error, not silently repaired.
pub fn neumann_check(g: &GroupTable, gens: Option<&[Elem]>) -> Result<BoundReport> {
    let gens: Vec<Elem> = match gens {
        Some(list) => list.to_vec(),
        None => g.generators().to_vec(),
    };
    let closure = g.subgroup_closure(&gens)?;
    if closure.order() != g.order() {
        return Err(Error::Hypothesis {
            name: "generators generate G",
            witness: format!(
                "supplied set generates only {} of {} elements",
                closure.order(),
                g.order()
            ),
        });
    }
    let k = gens.len() as u32;
    let z = center(g);
    let gamma2 = invariants::derived_subgroup(g);
    let lhs = (g.order() / z.order()) as u64;
    let base = gamma2.order() as u64;
    let rhs_exact = (base as u128).checked_pow(k);
    let rhs_log2 = k as f64 * (base as f64).log2();
    let mut report = BoundReport::quantitative(
        TheoremId::Neumann,
        lhs,
        rhs_exact,
        rhs_log2,
        0.0,
    )
    .with("k", k)
    .with("generators", join(&gens))
    .with("gamma2Order", base)
    .with("centerOrder", z.order());
    report.hypotheses.push(Hypothesis::holds(
        "generators generate G",
        format!("{k} generators close to all {} elements", g.order()),
    ));
    Ok(report)
}

/// `|G/Z_2(G)| <= n^(2 log2 n)` where
/// `n = |gamma_2(G) / (gamma_2(G) meet Z(G))|`.
pub fn podoski_szegedy_check(g: &GroupTable, tolerance: f64) -> Result<BoundReport> {
    let z = center(g);
    let z2 = second_center(g);
    let gamma2 = invariants::derived_subgroup(g);
    let meet = gamma2.intersection(&z);
    let n = (gamma2.order() / meet.order()) as u64;
    let lhs = (g.order() / z2.order()) as u64;
    Ok(BoundReport::quantitative(
        TheoremId::PodoskiSzegedy,
        lhs,
        power_bound_exact(n),
        power_bound_log2(n),
        tolerance,
    )
    .with("n", n)
    .with("centerOrder", z.order())
    .with("secondCenterOrder", z2.order())
    .with("gamma2Order", gamma2.order()))
}

/// The combined bound
/// `|G/Z(G)| <= n^(2 log2 n) * prod_i exp([x_i, G])` over an
/// invariant-factor basis `x_1 Z, ..., x_t Z` of `Z_2(G)/Z(G)`, where
/// `n = |gamma_2(G) Z(G) / Z(G)|`. Also verifies the intermediate
/// identities the derivation rests on and records them as hypotheses:
/// (a) each `[x_i, G]` lies in the center, (b) each `[x_i, G]` is itself a
/// subgroup, (c) the order of `x_i Z(G)` in `G/Z(G)` equals
/// `exp([x_i, G])`, (d) `|Z_2/Z| <= prod exp([x_i, G])`, and (e) the index
/// factorization `|G/Z| = |G/Z_2| * |Z_2/Z|`.
pub fn theorem_b_check(g: &GroupTable, tolerance: f64) -> Result<BoundReport> {
    let z = center(g);
    let z2 = second_center(g);
    let gamma2 = invariants::derived_subgroup(g);
    let meet = gamma2.intersection(&z);
    let n = (gamma2.order() / meet.order()) as u64;

    // invariant-factor basis of Z_2(G)/Z(G)
    let (z2_table, embed) = g.subgroup_table(&z2);
    let z_in_z2: Vec<Elem> = z
        .members()
        .iter()
        .map(|&e| {
            z2.members()
                .binary_search(&e)
                .map(|i| i as Elem)
                .map_err(|_| Error::internal("theorem B", "center not inside second center"))
        })
        .collect::<Result<_>>()?;
    let z_sub = z2_table.subgroup_from_members(z_in_z2);
    let q2 = z2_table.quotient(&z_sub)?;
    let basis = abelian_basis(&q2)?;
    let xs: Vec<Elem> = basis.basis.iter().map(|&i| embed[i as usize]).collect();
    let t = xs.len();

    let qz = g.quotient(&z)?;
    let mut exponents: Vec<u64> = Vec::with_capacity(t);
    let mut hypotheses = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        let set = commutator_set(g, x);
        for &c in &set {
            if !z.contains(c) {
                return Err(Error::internal(
                    "theorem B step (a)",
                    format!("[x_{i},G] has non-central value {c}"),
                ));
            }
        }
        let in_set = |e: Elem| set.binary_search(&e).is_ok();
        for &a in &set {
            if !in_set(g.inv(a)) || set.iter().any(|&b| !in_set(g.mul(a, b))) {
                return Err(Error::internal(
                    "theorem B step (b)",
                    format!("[x_{i},G] is not closed"),
                ));
            }
        }
        let n_i = exponent(g, &set);
        let coset_order = qz.table.element_order(qz.projection.apply(x)) as u64;
        if coset_order != n_i {
            return Err(Error::internal(
                "theorem B step (c)",
                format!("ord(x_{i} Z) = {coset_order} but exp([x_{i},G]) = {n_i}"),
            ));
        }
        exponents.push(n_i);
    }
    hypotheses.push(Hypothesis::holds(
        "commutator sets central",
        format!("[x_i,G] inside Z(G) for all {t} basis elements"),
    ));
    hypotheses.push(Hypothesis::holds(
        "commutator sets closed",
        "each central [x_i,G] is a subgroup".to_string(),
    ));
    hypotheses.push(Hypothesis::holds(
        "coset order equals exponent",
        format!("ord(x_i Z) = exp([x_i,G]) = [{}]", join(&exponents)),
    ));

    let z2_over_z = (z2.order() / z.order()) as u64;
    let prod = checked_product(&exponents);
    if let Some(p) = prod {
        if (z2_over_z as u128) > p {
            return Err(Error::internal(
                "theorem B step (d)",
                format!("|Z2/Z| = {z2_over_z} exceeds prod exp = {p}"),
            ));
        }
    }
    hypotheses.push(Hypothesis::holds(
        "second center bounded by exponents",
        format!("|Z2/Z| = {z2_over_z} <= prod exp([x_i,G])"),
    ));

    let lhs = (g.order() / z.order()) as u64;
    let g_over_z2 = (g.order() / z2.order()) as u64;
    if lhs != g_over_z2 * z2_over_z {
        return Err(Error::internal(
            "theorem B step (e)",
            format!("{lhs} != {g_over_z2} * {z2_over_z}"),
        ));
    }
    hypotheses.push(Hypothesis::holds(
        "index factorization",
        format!("|G/Z| = |G/Z2| * |Z2/Z| = {g_over_z2} * {z2_over_z}"),
    ));

    let rhs_exact = power_bound_exact(n).and_then(|b| prod.and_then(|p| b.checked_mul(p)));
    let rhs_log2 = power_bound_log2(n) + log2_sum(&exponents);
    let mut report =
        BoundReport::quantitative(TheoremId::TheoremB, lhs, rhs_exact, rhs_log2, tolerance)
            .with("n", n)
            .with("t", t)
            .with("basis", join(&xs))
            .with("basisMode", "invariant-factor")
            .with("invariantFactors", join(&basis.orders))
            .with("exponents", join(&exponents))
            .with("centerOrder", z.order())
            .with("secondCenterOrder", z2.order())
            .with("gamma2Order", gamma2.order());
    report.hypotheses = hypotheses;
    Ok(report)
}

/// `|G/Z(G)| <= prod_i |[x_i, G]|` over coset representatives generating
/// `G/Z(G)`. Representatives are computed greedily unless supplied; a
/// non-generating supplied set is a hypothesis error.
pub fn proposition2_check(g: &GroupTable, coset_gens: Option<&[Elem]>) -> Result<BoundReport> {
    let z = center(g);
    let qz = g.quotient(&z)?;
    let reps: Vec<Elem> = match coset_gens {
        Some(list) => {
            for &x in list {
                if x as usize >= g.order() {
                    return Err(Error::IndexOutOfRange {
                        index: x as usize,
                        order: g.order(),
                    });
                }
            }
            let images: Vec<Elem> = list.iter().map(|&x| qz.projection.apply(x)).collect();
            let closure = qz.table.subgroup_closure(&images)?;
            if closure.order() != qz.table.order() {
                return Err(Error::Hypothesis {
                    name: "cosets generate G/Z(G)",
                    witness: format!(
                        "supplied cosets generate only {} of {} cosets",
                        closure.order(),
                        qz.table.order()
                    ),
                });
            }
            list.to_vec()
        }
        None => generating_cosets(&qz),
    };
    let sizes: Vec<u64> = reps.iter().map(|&x| commutator_set(g, x).len() as u64).collect();
    let lhs = (g.order() / z.order()) as u64;
    let mut report = BoundReport::quantitative(
        TheoremId::Proposition2,
        lhs,
        checked_product(&sizes),
        log2_sum(&sizes),
        0.0,
    )
    .with("t", reps.len())
    .with("cosetRepresentatives", join(&reps))
    .with("commutatorSetSizes", join(&sizes))
    .with("centerOrder", z.order());
    report.hypotheses.push(Hypothesis::holds(
        "cosets generate G/Z(G)",
        format!("{} cosets generate the central quotient", reps.len()),
    ));
    Ok(report)
}

/// `|G : C_G(H)| <= prod_i |[h_i, G]|` for `H = <h_1, ..., h_t, Z(G)>`.
/// Also verifies the chain behind it: the centralizer index is at most the
/// product of the element-centralizer indices, each of which equals the
/// class size `|h_i^G| = |[h_i, G]|`.
pub fn lemma1_check(g: &GroupTable, h_gens: &[Elem]) -> Result<BoundReport> {
    for &x in h_gens {
        if x as usize >= g.order() {
            return Err(Error::IndexOutOfRange { index: x as usize, order: g.order() });
        }
    }
    let z = center(g);
    let mut seed: Vec<Elem> = h_gens.to_vec();
    seed.extend_from_slice(z.members());
    let h = g.subgroup_closure(&seed)?;
    let c_h = centralizer_of_subgroup(g, &h);
    let lhs = (g.order() / c_h.order()) as u64;

    let mut sizes: Vec<u64> = Vec::with_capacity(h_gens.len());
    let mut index_product: u128 = 1;
    let mut hypotheses = Vec::new();
    for &hi in h_gens {
        let class = conjugacy_class(g, hi).len() as u64;
        let set = commutator_set(g, hi).len() as u64;
        let index = (g.order() / invariants::centralizer(g, hi).order()) as u64;
        if class != set || class != index {
            return Err(Error::internal(
                "lemma 1 chain",
                format!("element {hi}: index {index}, class {class}, [h,G] {set}"),
            ));
        }
        index_product = index_product.saturating_mul(index as u128);
        sizes.push(set);
    }
    hypotheses.push(Hypothesis::holds(
        "centralizer index equals class size",
        format!("|G:C(h_i)| = |h_i^G| = |[h_i,G]| = [{}]", join(&sizes)),
    ));
    if (lhs as u128) > index_product {
        return Err(Error::internal(
            "lemma 1 chain",
            format!("|G:C(H)| = {lhs} exceeds product of element indices {index_product}"),
        ));
    }
    hypotheses.push(Hypothesis::holds(
        "subgroup centralizer bounded",
        format!("|G:C(H)| = {lhs} <= prod |G:C(h_i)| = {index_product}"),
    ));

    let mut report = BoundReport::quantitative(
        TheoremId::Lemma1,
        lhs,
        checked_product(&sizes),
        log2_sum(&sizes),
        0.0,
    )
    .with("hGenerators", join(h_gens))
    .with("subgroupOrder", h.order())
    .with("centralizerOrder", c_h.order())
    .with("commutatorSetSizes", join(&sizes))
    .with("centerOrder", z.order());
    report.hypotheses = hypotheses;
    Ok(report)
}

/// Qualitative report pairing the breadth (largest conjugacy class) with
/// `|gamma_2(G)|`; each is finite exactly when the other is, so for finite
/// input this is survey content only.
pub fn bfc_report(g: &GroupTable) -> BoundReport {
    let data = commutator_data(g);
    BoundReport::qualitative(TheoremId::Bfc, data.breadth as u64)
        .with("breadth", data.breadth)
        .with("gamma2Order", data.gamma2.order())
}

/// One survey line: the headline invariants of a group plus the verdict of
/// every check, reproducible from the descriptor alone.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyRow {
    pub descriptor: String,
    pub order: u64,
    pub center_order: u64,
    pub second_center_order: u64,
    pub gamma2_order: u64,
    pub commutator_count: u64,
    pub breadth: u64,
    /// Nilpotency class, when the group is nilpotent.
    pub nilpotency_class: Option<u64>,
    /// Verdict per theorem id.
    pub holds: BTreeMap<String, bool>,
    /// `lhs/rhs` per theorem id, where the bound is an exact integer.
    pub tightness: BTreeMap<String, f64>,
}

/// Runs every check on one group and assembles its survey row.
pub fn survey_row(descriptor: &str, g: &GroupTable, tolerance: f64) -> Result<SurveyRow> {
    let data = commutator_data(g);
    let series = invariants::upper_central_series(g);
    let reports = vec![
        schur_witness(g),
        neumann_check(g, None)?,
        podoski_szegedy_check(g, tolerance)?,
        theorem_b_check(g, tolerance)?,
        proposition2_check(g, None)?,
        lemma1_check(g, g.generators())?,
        bfc_report(g),
    ];
    let mut holds = BTreeMap::new();
    let mut tightness = BTreeMap::new();
    for r in &reports {
        holds.insert(r.theorem_id.to_string(), r.holds);
        if let Some(ratio) = r.tightness() {
            tightness.insert(r.theorem_id.to_string(), ratio);
        }
    }
    Ok(SurveyRow {
        descriptor: descriptor.to_string(),
        order: g.order() as u64,
        center_order: series.center().order() as u64,
        second_center_order: series.second_center().order() as u64,
        gamma2_order: data.gamma2.order() as u64,
        commutator_count: data.commutator_set.len() as u64,
        breadth: data.breadth as u64,
        nilpotency_class: series.nilpotency_class.map(|c| c as u64),
        holds,
        tightness,
    })
}

/// Finite shadow of the extraspecial counterexample family: for
/// `m = 1..m_max` builds the exponent-`p` extraspecial group of order
/// `p^(1+2m)` and reports its invariants. Along the family `|gamma_2|`
/// stays at `p` while `|G/Z|` grows as `p^(2m)`, so no function of
/// `|gamma_2|` alone can bound `|G/Z|`.
pub fn extraspecial_gap_survey(
    p: u64,
    m_max: u32,
    cap: usize,
    tolerance: f64,
) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let desc = GroupDescriptor::Extraspecial { p, m, sign: Sign::Plus };
        let g = catalog::build_with_cap(&desc, cap)?;
        rows.push(survey_row(&desc.to_string(), &g, tolerance)?);
    }
    Ok(rows)
}

/// Survey rows for the whole catalog up to `max_order`.
pub fn survey_catalog(max_order: u64, cap: usize, tolerance: f64) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::new();
    for desc in catalog::catalog_suite(max_order) {
        let g = catalog::build_with_cap(&desc, cap)?;
        rows.push(survey_row(&desc.to_string(), &g, tolerance)?);
    }
    Ok(rows)
}
