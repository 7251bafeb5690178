//! A fixed replay of published claims about small hyperspace semigroups.
//! Every input is built in; nothing is read from disk.

use std::collections::BTreeSet;

use gspace::classify::{is_k_linked, is_maximal_k_linked};
use gspace::enumerate::filter_all;
use gspace::literal::parse_hyperspace;
use gspace::structure::{
    are_isomorphic, evaluation_is_surjective, find_sections, minimal_left_ideals, orbits,
    right_cancelable_certificate, shift_invariant_core, special_elements, DEFAULT_BUDGET,
};
use gspace::term::TermPrinter;
use gspace::{enumerate_all, product, subsemigroup_view, Groupoid, Hyperspace, SubsetMask};
use serde::Serialize;
use serde_json::json;

use crate::report::Output;
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn check(&mut self, name: &str, expected: impl ToString, found: impl ToString) -> &mut Check {
        let (expected, found) = (expected.to_string(), found.to_string());
        self.checks.push(Check {
            name: name.to_string(),
            pass: expected == found,
            expected,
            found,
            notes: Vec::new(),
        });
        self.checks.last_mut().expect("just pushed")
    }
}

fn names(set: BTreeSet<String>) -> String {
    set.into_iter().collect::<Vec<_>>().join(", ")
}

fn z2() -> Groupoid {
    Groupoid::builtin("cyclic", 2)
        .unwrap()
        .relabeled("Z2", &["e", "a"])
        .unwrap()
}

fn z3() -> Groupoid {
    Groupoid::builtin("cyclic", 3)
        .unwrap()
        .relabeled("Z3", &["e", "a", "a⁻¹"])
        .unwrap()
}

fn mask(elements: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(elements.iter().copied())
}

fn self_transversal(n: usize) -> Vec<Hyperspace> {
    filter_all(n, |f| *f == f.transversal()).expect("n ≤ 6")
}

const TABLE: [[i32; 7]; 7] = [
    [-3, -3, -3, 0, 0, 0, 3],
    [-3, -3, -2, 0, 0, 1, 3],
    [-3, -3, -1, 0, 0, 2, 3],
    [-3, -3, 0, 0, 0, 3, 3],
    [-3, -2, 0, 0, 1, 3, 3],
    [-3, -1, 0, 0, 2, 3, 3],
    [-3, 0, 0, 0, 3, 3, 3],
];

const CHAIN: [&str; 7] = [
    "e∧a∧a⁻¹",
    "e∧a",
    "e∧(a∨a⁻¹)",
    "(e∨a)∧(e∨a⁻¹)∧(a∨a⁻¹)",
    "e∨(a∧a⁻¹)",
    "e∨a",
    "e∨a∨a⁻¹",
];

/// Agreeing entries and a description of each disagreement.
fn chain_agreement(g: &Groupoid, terms: &[&str]) -> (usize, Vec<String>) {
    let printer = TermPrinter::new(3);
    let xs: Vec<Hyperspace> = terms
        .iter()
        .map(|t| parse_hyperspace(t, g).unwrap())
        .collect();
    let mut agree = 0;
    let mut notes = Vec::new();
    for (i, u) in xs.iter().enumerate() {
        for (j, v) in xs.iter().enumerate() {
            let w = product(g, u, v).unwrap();
            let found = xs.iter().position(|x| *x == w).map(|k| k as i32 - 3);
            if found == Some(TABLE[i][j]) {
                agree += 1;
            } else {
                notes.push(format!(
                    "x{} ∘ x{} = {} but the table lists x{}",
                    i as i32 - 3,
                    j as i32 - 3,
                    printer.render(&w, g.names()).unwrap(),
                    TABLE[i][j]
                ));
            }
        }
    }
    (agree, notes)
}

fn small_groups(suite: &mut Suite) {
    let g = z2();
    let printer = TermPrinter::new(2);
    let show = |h: &Hyperspace| printer.render(h, g.names()).unwrap();
    let view = subsemigroup_view(&g, enumerate_all(2).unwrap().collect()).unwrap();
    let t = view.cayley().unwrap();
    suite.check("G(Z2) has four elements", 4, view.len());
    let o = orbits(&g, &view).unwrap();
    let sections = find_sections(&view, &o, DEFAULT_BUDGET).unwrap();
    let found: Vec<String> = sections
        .iter()
        .map(|s| names(s.iter().map(|&i| show(&view.elements()[i])).collect()))
        .collect();
    suite.check(
        "G(Z2) has a unique transversal semigroup {e∧a, e, e∨a}",
        "e, e∧a, e∨a",
        found.join(" | "),
    );
    let special = special_elements(t);
    suite.check(
        "G(Z2) right zeros are e∧a and e∨a",
        "e∧a, e∨a",
        names(
            special
                .right_zeros
                .iter()
                .map(|&i| show(&view.elements()[i]))
                .collect(),
        ),
    );
    suite.check(
        "G(Z2) unit is e",
        "e",
        special
            .unit
            .map(|u| show(&view.elements()[u]))
            .unwrap_or_default(),
    );

    let g = z3();
    let printer = TermPrinter::new(3);
    let show = |h: &Hyperspace| printer.render(h, g.names()).unwrap();
    let view = subsemigroup_view(&g, enumerate_all(3).unwrap().collect()).unwrap();
    let t = view.cayley().unwrap();
    suite.check("G(Z3) has 18 elements", 18, view.len());
    let o = orbits(&g, &view).unwrap();
    suite.check("G(Z3) splits into 8 orbits", 8, o.len());
    let sections = find_sections(&view, &o, DEFAULT_BUDGET).unwrap();
    let check = suite.check("G(Z3) has 9 transversal semigroups", 9, sections.len());
    for s in &sections {
        check.notes.push(names(
            s.iter().map(|&i| show(&view.elements()[i])).collect(),
        ));
    }
    let all_iso = sections.iter().all(|s| {
        let sub = view.restrict(s).unwrap();
        are_isomorphic(sub.cayley().unwrap(), &o.quotient).is_some()
            && evaluation_is_surjective(&g, &view, s).unwrap()
    });
    suite.check(
        "each transversal semigroup of G(Z3) is isomorphic to the quotient and T×H maps onto G(Z3)",
        true,
        all_iso,
    );
    let core: BTreeSet<String> = shift_invariant_core(&g).unwrap().iter().map(show).collect();
    let listed_core: BTreeSet<String> = ["e∧a∧a⁻¹", "e∨a∨a⁻¹", "(e∨a)∧(e∨a⁻¹)∧(a∨a⁻¹)"]
        .map(String::from)
        .into();
    suite.check(
        "G(Z3) shift-invariant elements",
        names(listed_core.clone()),
        names(core),
    );
    let special = special_elements(t);
    let mut listed_idempotents = listed_core;
    listed_idempotents.extend(["e", "e∨(a∧a⁻¹)", "e∧(a∨a⁻¹)"].map(String::from));
    suite.check(
        "G(Z3) idempotents are the right zeros and e, e∨(a∧a⁻¹), e∧(a∨a⁻¹)",
        names(listed_idempotents),
        names(
            special
                .idempotents
                .iter()
                .map(|&i| show(&view.elements()[i]))
                .collect(),
        ),
    );
    suite.check(
        "G(Z3) unit is e",
        "e",
        special
            .unit
            .map(|u| show(&view.elements()[u]))
            .unwrap_or_default(),
    );

    let (agree, notes) = chain_agreement(&g, &CHAIN);
    let check = suite.check(
        "Cayley table of the seven listed elements",
        "49/49",
        format!("{agree}/49"),
    );
    check.notes = notes;
    let mut swapped = CHAIN;
    swapped[5] = "e∨a⁻¹";
    let (alt, _) = chain_agreement(&g, &swapped);
    check.notes.push(format!(
        "taking x2 = e∨a⁻¹ instead of e∨a: {alt}/49 entries agree"
    ));
}

fn three_linked(suite: &mut Suite) {
    let g = Groupoid::builtin("cyclic", 5).unwrap();
    let l = Hyperspace::generate(
        5,
        &[
            mask(&[0, 1, 2]),
            mask(&[0, 1, 4]),
            mask(&[0, 2, 4]),
            mask(&[1, 2, 4]),
        ],
    )
    .unwrap();
    let ll = product(&g, &l, &l).unwrap();
    suite.check("L is maximal 3-linked", true, is_maximal_k_linked(&l, 3));
    suite.check("L∘L is 3-linked", true, is_k_linked(&ll, 3));
    let check = suite.check(
        "L∘L is not maximal 3-linked",
        false,
        is_maximal_k_linked(&ll, 3),
    );
    let computed: BTreeSet<Vec<usize>> = ll
        .minimal_sets()
        .into_iter()
        .map(|a| a.iter().collect())
        .collect();
    let listed: BTreeSet<Vec<usize>> = [
        vec![1, 2, 4, 5],
        vec![0, 2, 3, 4],
        vec![0, 1, 3, 4],
        vec![0, 1, 2, 4],
        vec![0, 1, 2, 3],
    ]
    .into();
    check
        .notes
        .push(format!("computed base of L∘L: {computed:?}"));
    for s in listed.difference(&computed) {
        check
            .notes
            .push(format!("only in the published list: {s:?}"));
    }
    for s in computed.difference(&listed) {
        check
            .notes
            .push(format!("only in the computed base: {s:?}"));
    }
}

fn superextensions(suite: &mut Suite) {
    let g = Groupoid::builtin("cyclic", 3).unwrap();
    let view = subsemigroup_view(&g, self_transversal(3)).unwrap();
    suite.check("λ(Z3) has four elements", 4, view.len());
    let l_delta = Hyperspace::generate(3, &[mask(&[0, 1]), mask(&[0, 2]), mask(&[1, 2])]).unwrap();
    let zeros = special_elements(view.cayley().unwrap()).zeros;
    suite.check(
        "L_Δ is the zero of λ(Z3)",
        true,
        zeros.len() == 1 && view.elements()[zeros[0]] == l_delta,
    );

    let g5 = Groupoid::builtin("cyclic", 5).unwrap();
    let view5 = subsemigroup_view(&g5, self_transversal(5)).unwrap();
    let o5 = orbits(&g5, &view5).unwrap();
    let found = find_sections(&view5, &o5, DEFAULT_BUDGET).map(|s| s.len());
    suite.check(
        "λ(Z5) has no transversal semigroup",
        "Ok(0)",
        format!("{found:?}"),
    );

    let g6 = Groupoid::builtin("cyclic", 6).unwrap();
    let view6 = subsemigroup_view(&g6, self_transversal(6)).unwrap();
    let ideals = minimal_left_ideals(view6.cayley().unwrap());
    let principals: Vec<usize> = (0..6)
        .map(|x| {
            view6
                .position(&Hyperspace::principal(6, x).unwrap())
                .unwrap()
        })
        .collect();
    let disjoint = !ideals.is_empty()
        && ideals
            .iter()
            .all(|i| principals.iter().all(|p| !i.contains(p)));
    let check = suite.check(
        "minimal left ideals of λ(Z6) avoid the ultrafilters",
        true,
        disjoint,
    );
    check.notes.push(format!(
        "|λ(Z6)| = {}, {} minimal left ideals",
        view6.len(),
        ideals.len()
    ));
}

/// Status of the three finite conditions on principal ultrafilters; no claim is checked.
fn cancelability_survey() -> Vec<serde_json::Value> {
    let rps = Groupoid::from_table(
        "rock-paper-scissors",
        vec!["r".into(), "p".into(), "s".into()],
        vec![0, 1, 0, 1, 1, 2, 0, 2, 2],
    )
    .unwrap();
    let mut groupoids = vec![rps];
    for (family, n) in [
        ("cyclic", 2),
        ("cyclic", 3),
        ("cyclic", 4),
        ("klein-4", 4),
        ("left-zero", 3),
        ("right-zero", 3),
    ] {
        groupoids.push(Groupoid::builtin(family, n).unwrap());
    }
    groupoids
        .iter()
        .map(|g| {
            let rows: Vec<[bool; 3]> = (0..g.len())
                .map(|u| {
                    let c = right_cancelable_certificate(
                        g,
                        &Hyperspace::principal(g.len(), u).unwrap(),
                        None,
                    )
                    .unwrap();
                    [
                        c.right_cancelable,
                        c.points_distinct,
                        c.disjoint_family.is_some(),
                    ]
                })
                .collect();
            json!({
                "groupoid": g.name(),
                "right_cancelable": rows.iter().filter(|r| r[0]).count(),
                "shifts_distinct": rows.iter().filter(|r| r[1]).count(),
                "disjoint_family": rows.iter().filter(|r| r[2]).count(),
                "conditions_agree": rows.iter().all(|r| r[0] == r[1] && r[1] == r[2]),
            })
        })
        .collect()
}

pub fn run_suite() -> Result<Output, CliError> {
    let mut suite = Suite { checks: Vec::new() };
    small_groups(&mut suite);
    three_linked(&mut suite);
    superextensions(&mut suite);
    let survey = cancelability_survey();
    let pass = suite.checks.iter().all(|c| c.pass);
    let mut text = Vec::new();
    for c in &suite.checks {
        text.push(format!(
            "{} {}: expected {}, found {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.expected,
            c.found
        ));
        text.extend(c.notes.iter().map(|n| format!("     {n}")));
    }
    text.push(
        "INFO principal ultrafilters: right cancelable / distinct shifts / disjoint shift family"
            .into(),
    );
    for row in &survey {
        text.push(format!(
            "     {}: {} / {} / {}, agree: {}",
            row["groupoid"].as_str().unwrap_or_default(),
            row["right_cancelable"],
            row["shifts_distinct"],
            row["disjoint_family"],
            row["conditions_agree"]
        ));
    }
    let failed = suite.checks.iter().filter(|c| !c.pass).count();
    text.push(format!("{} checks, {failed} failed", suite.checks.len()));
    Ok(Output {
        payload: json!({ "checks": suite.checks, "cancelability_survey": survey }),
        text,
        verdict: Some(pass),
        ..Output::default()
    })
}
