use gspace::literal::{display_hyperspace, format_literal, parse_hyperspace};
use gspace::structure::{
    are_isomorphic, center, evaluation_is_surjective, find_sections, minimal_ideal,
    minimal_left_ideals, orbits, special_elements,
};
use gspace::term::TermPrinter;
use gspace::{
    classify, count_all, enumerate_class, product, subsemigroup_view, Error, Groupoid, Hyperspace,
    HyperspaceClass, SemigroupView,
};
use serde_json::json;

use crate::report::{Output, TableOut};
use crate::CliError;

/// Views above this size are refused: their tables grow quadratically.
pub const MAX_VIEW: usize = 5000;

/// Renders hyperspaces over one groupoid.
pub struct Labels<'a> {
    g: &'a Groupoid,
    printer: TermPrinter,
}

impl<'a> Labels<'a> {
    pub fn new(g: &'a Groupoid) -> Self {
        Labels {
            g,
            printer: TermPrinter::new(g.len()),
        }
    }

    /// Minimal-set literal in element names; always re-parses.
    pub fn literal(&self, h: &Hyperspace) -> String {
        format_literal(h, self.g.names())
    }

    /// Lattice term for carriers of at most three points, literal otherwise.
    pub fn text(&self, h: &Hyperspace) -> String {
        display_hyperspace(h, self.g, &self.printer)
    }

    pub fn literals(&self, hs: &[Hyperspace]) -> Vec<String> {
        hs.iter().map(|h| self.literal(h)).collect()
    }
}

pub fn parse_class(text: &str) -> Result<HyperspaceClass, CliError> {
    Ok(text.parse()?)
}

pub fn class_members(g: &Groupoid, class: HyperspaceClass) -> Result<Vec<Hyperspace>, CliError> {
    Ok(enumerate_class(g, class)?)
}

fn bounded_view(g: &Groupoid, elements: Vec<Hyperspace>) -> Result<SemigroupView, CliError> {
    if elements.len() > MAX_VIEW {
        return Err(CliError::Input(format!(
            "{} elements exceed the table limit of {MAX_VIEW}; choose a smaller class",
            elements.len()
        )));
    }
    Ok(subsemigroup_view(g, elements)?)
}

fn table_out(view: &SemigroupView, labels: &Labels) -> TableOut {
    TableOut {
        labels: labels.literals(view.elements()),
        rows: view.dump().rows,
    }
}

pub fn enumerate(g: &Groupoid, class: &str, count_only: bool) -> Result<Output, CliError> {
    let class = parse_class(class)?;
    if count_only {
        let count = match class {
            HyperspaceClass::All => count_all(g.len())?,
            _ => class_members(g, class)?.len() as u64,
        };
        return Ok(Output {
            payload: json!({ "class": class.to_string(), "count": count }),
            text: vec![format!("{class}: {count}")],
            ..Output::default()
        });
    }
    let members = class_members(g, class)?;
    let labels = Labels::new(g);
    let mut text = vec![format!("{class}: {} elements", members.len())];
    text.extend(
        members
            .iter()
            .enumerate()
            .map(|(i, h)| format!("{i:>6}  {}", labels.text(h))),
    );
    let literals = labels.literals(&members);
    Ok(Output {
        payload: json!({ "class": class.to_string(), "count": members.len(), "elements": literals }),
        text,
        list: Some(literals),
        ..Output::default()
    })
}

pub fn classify_one(g: &Groupoid, input: &str) -> Result<Output, CliError> {
    let h = parse_hyperspace(input, g)?;
    let flags = classify(&h, Some(g))?;
    let labels = Labels::new(g);
    let text = vec![
        format!("hyperspace: {}", labels.text(&h)),
        format!("minimal sets: {}", labels.literal(&h)),
        format!("transversal: {}", labels.text(&h.transversal())),
        format!("linked up to k = {}", flags.linked_up_to),
        format!("centered: {}", flags.centered),
        format!("filter: {}", flags.filter),
        format!("ultrafilter: {}", flags.ultrafilter),
        format!(
            "maximal k-linked for k = {:?}",
            flags
                .maximal_k_linked
                .iter()
                .filter(|(_, &v)| v)
                .map(|(k, _)| *k)
                .collect::<Vec<_>>()
        ),
        format!("self-transversal: {}", flags.self_transversal),
        format!(
            "shift-invariant: {}",
            flags.shift_invariant.unwrap_or(false)
        ),
    ];
    Ok(Output {
        payload: json!({
            "hyperspace": labels.literal(&h),
            "transversal": labels.literal(&h.transversal()),
            "flags": flags,
        }),
        text,
        ..Output::default()
    })
}

pub fn product_of(g: &Groupoid, left: &str, right: &str) -> Result<Output, CliError> {
    let u = parse_hyperspace(left, g)?;
    let v = parse_hyperspace(right, g)?;
    let w = product(g, &u, &v)?;
    let labels = Labels::new(g);
    Ok(Output {
        payload: json!({
            "left": labels.literal(&u),
            "right": labels.literal(&v),
            "product": labels.literal(&w),
        }),
        text: vec![format!(
            "{} ∘ {} = {}",
            labels.text(&u),
            labels.text(&v),
            labels.text(&w)
        )],
        ..Output::default()
    })
}

/// Members of `class`, or the `;`-separated hyperspaces in `elements`.
pub fn select(
    g: &Groupoid,
    class: &str,
    elements: Option<&str>,
) -> Result<Vec<Hyperspace>, CliError> {
    match elements {
        Some(list) => list
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_hyperspace(s, g).map_err(CliError::from))
            .collect(),
        None => class_members(g, parse_class(class)?),
    }
}

pub fn table(g: &Groupoid, members: Vec<Hyperspace>) -> Result<Output, CliError> {
    let view = bounded_view(g, members)?;
    let labels = Labels::new(g);
    let out = table_out(&view, &labels);
    let mut text = vec![format!(
        "{} elements, closed: {}",
        view.len(),
        view.is_closed()
    )];
    if let Some((i, j)) = view.escape() {
        text.push(format!("first escaping product: #{i} ∘ #{j}"));
    }
    for (i, h) in view.elements().iter().enumerate() {
        text.push(format!("#{i:<4} {}", labels.text(h)));
    }
    for (i, row) in out.rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map_or("-".to_string(), |v| v.to_string()))
            .collect();
        text.push(format!("#{i:<4} | {}", cells.join(" ")));
    }
    Ok(Output {
        payload: json!({
            "elements": out.labels,
            "closed": view.is_closed(),
            "escape": view.escape(),
            "rows": out.rows,
        }),
        text,
        table: Some(out),
        ..Output::default()
    })
}

pub fn analyze(g: &Groupoid, members: Vec<Hyperspace>) -> Result<Output, CliError> {
    let view = bounded_view(g, members)?;
    let t = view.cayley()?;
    let labels = Labels::new(g);
    let name = |ix: &[usize]| -> Vec<String> {
        ix.iter()
            .map(|&i| labels.literal(&view.elements()[i]))
            .collect()
    };
    let shown = |ix: &[usize]| -> String {
        ix.iter()
            .map(|&i| labels.text(&view.elements()[i]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let special = special_elements(t);
    let ideal = minimal_ideal(t);
    let left = minimal_left_ideals(t);
    let centre = center(t);
    let mut text = vec![
        format!("elements: {}", view.len()),
        format!("associative: {}", ideal.associative),
        format!(
            "idempotents ({}): {}",
            special.idempotents.len(),
            shown(&special.idempotents)
        ),
        format!("left zeros: {}", shown(&special.left_zeros)),
        format!("right zeros: {}", shown(&special.right_zeros)),
        format!("zeros: {}", shown(&special.zeros)),
        format!(
            "unit: {}",
            special.unit.map_or("none".to_string(), |u| shown(&[u]))
        ),
        format!("left cancelable: {}", shown(&special.left_cancelable)),
        format!("right cancelable: {}", shown(&special.right_cancelable)),
        format!("center: {}", shown(&centre)),
        format!(
            "minimal ideal ({}): {}",
            ideal.elements.len(),
            shown(&ideal.elements)
        ),
        format!("minimal left ideals: {}", left.len()),
    ];
    text.extend(left.iter().map(|l| format!("  {{{}}}", shown(l))));
    Ok(Output {
        payload: json!({
            "elements": view.len(),
            "associative": ideal.associative,
            "idempotents": name(&special.idempotents),
            "left_zeros": name(&special.left_zeros),
            "right_zeros": name(&special.right_zeros),
            "zeros": name(&special.zeros),
            "unit": special.unit.map(|u| labels.literal(&view.elements()[u])),
            "left_cancelable": name(&special.left_cancelable),
            "right_cancelable": name(&special.right_cancelable),
            "center": name(&centre),
            "minimal_ideal": name(&ideal.elements),
            "minimal_left_ideals": left.iter().map(|l| name(l)).collect::<Vec<_>>(),
        }),
        text,
        ..Output::default()
    })
}

pub fn orbit_report(g: &Groupoid, members: Vec<Hyperspace>) -> Result<Output, CliError> {
    let view = bounded_view(g, members)?;
    let o = orbits(g, &view)?;
    let labels = Labels::new(g);
    let orbit_names: Vec<Vec<String>> = o
        .members
        .iter()
        .map(|ix| {
            ix.iter()
                .map(|&i| labels.literal(&view.elements()[i]))
                .collect()
        })
        .collect();
    let mut text = vec![format!(
        "{} orbits, {} fixed points",
        o.len(),
        o.fixed_points().len()
    )];
    for (k, ix) in o.members.iter().enumerate() {
        let shown: Vec<String> = ix
            .iter()
            .map(|&i| labels.text(&view.elements()[i]))
            .collect();
        text.push(format!("orbit {k}: {}", shown.join(", ")));
    }
    let rows = o.quotient.rows();
    for (k, row) in rows.iter().enumerate() {
        text.push(format!(
            "quotient {k} | {}",
            row.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    let table = TableOut {
        labels: o
            .members
            .iter()
            .map(|ix| labels.literal(&view.elements()[ix[0]]))
            .collect(),
        rows: rows
            .iter()
            .map(|r| r.iter().map(|&v| Some(v)).collect())
            .collect(),
    };
    Ok(Output {
        payload: json!({ "count": o.len(), "orbits": orbit_names, "quotient": rows }),
        text,
        table: Some(table),
        ..Output::default()
    })
}

pub fn sections(g: &Groupoid, members: Vec<Hyperspace>, budget: u64) -> Result<Output, CliError> {
    let view = bounded_view(g, members)?;
    let o = orbits(g, &view)?;
    let found = find_sections(&view, &o, budget)?;
    let labels = Labels::new(g);
    let mut text = vec![format!(
        "{} orbits, {} transversal semigroups",
        o.len(),
        found.len()
    )];
    let mut listed = Vec::new();
    for (k, s) in found.iter().enumerate() {
        let sub = view.restrict(s)?;
        let iso = are_isomorphic(sub.cayley()?, &o.quotient).is_some();
        let onto = evaluation_is_surjective(g, &view, s)?;
        let shown: Vec<String> = s
            .iter()
            .map(|&i| labels.text(&view.elements()[i]))
            .collect();
        text.push(format!("section {k}: {{{}}}", shown.join(", ")));
        text.push(format!(
            "  isomorphic to the quotient: {iso}; evaluation onto: {onto}"
        ));
        listed.push(json!({
            "elements": s.iter().map(|&i| labels.literal(&view.elements()[i])).collect::<Vec<_>>(),
            "isomorphic_to_quotient": iso,
            "evaluation_onto": onto,
        }));
    }
    Ok(Output {
        payload: json!({ "orbits": o.len(), "count": found.len(), "sections": listed }),
        text,
        ..Output::default()
    })
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
