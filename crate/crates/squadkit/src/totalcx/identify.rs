//! Mechanical identification of the two presentations: the category-level
//! relator families (1)–(9) against the reflected total complex of the
//! nerve. Generators are matched by the canonical dictionary ([A] ↔ x_{1,0},
//! [A ~ A'] ↔ x_{1,1}, [A↣B↠B/A] ↔ x_{2,0}); the normal closures are
//! compared by mutual membership of the generating relators.

use super::nerve::nerve_ws;
use super::presentation::{phi_reflect, PresenRow, TotalCxError, TotalPresentation};
use crate::waldcat::{d_star, Dstar, DstarError, FiniteWaldhausenCategory};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum IdentifyError {
    #[error(transparent)]
    Dstar(#[from] DstarError),
    #[error(transparent)]
    TotalCx(#[from] TotalCxError),
    #[error(transparent)]
    Nerve(#[from] super::nerve::NerveError),
    #[error("generator dictionaries disagree: {0}")]
    DictionaryMismatch(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationTrace {
    pub relation: u8,
    pub nerve_family: String,
    pub category_instances: usize,
    pub nerve_instances: usize,
    pub category_relators_in_nerve_closure: bool,
    pub nerve_relators_in_category_closure: bool,
}

#[derive(Debug, Serialize)]
pub struct IdentifyReport {
    pub object_generators: usize,
    pub degree1_generators: usize,
    pub rows: Vec<RelationTrace>,
    pub n0_mutual: bool,
    pub n1_mutual: bool,
    pub matched: bool,
    pub first_failure: Option<String>,
}

impl IdentifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "generators: {} objects, {} degree-1\n",
            self.object_generators, self.degree1_generators
        ));
        out.push_str("relation  nerve-family        #cat  #nerve  cat⊆nerve  nerve⊆cat\n");
        for r in &self.rows {
            out.push_str(&format!(
                "({})       {:<18} {:>5} {:>7}  {:<9} {}\n",
                r.relation,
                r.nerve_family,
                r.category_instances,
                r.nerve_instances,
                r.category_relators_in_nerve_closure,
                r.nerve_relators_in_category_closure
            ));
        }
        out.push_str(&format!("N0 lattices mutual: {}\n", self.n0_mutual));
        out.push_str(&format!("N1 lattices mutual: {}\n", self.n1_mutual));
        out.push_str(&format!("identification: {}\n", if self.matched { "MATCH" } else { "MISMATCH" }));
        if let Some(f) = &self.first_failure {
            out.push_str(&format!("first failure: {}\n", f));
        }
        out
    }
}

fn nerve_family_of(relation: u8) -> &'static str {
    match relation {
        1 => "∂2 x_{1,1}",
        2 => "∂2 x_{2,0}",
        3 => "degenerate x_{1,0}",
        4 => "degenerate x_{1,1}",
        5 => "degenerate x_{2,0}",
        6 => "∂3 x_{1,2}",
        7 => "∂3 x_{2,1}",
        8 => "∂3 x_{3,0}",
        9 => "shuffle monoid",
        _ => "?",
    }
}

fn relation_of_row(row: PresenRow) -> u8 {
    match row {
        PresenRow::DegenerateWe => 4,
        PresenRow::DegenerateFlag => 5,
        PresenRow::VerticalPair => 6,
        PresenRow::MixedSquare => 7,
        PresenRow::FlagTriple => 8,
        PresenRow::Shuffle => 9,
    }
}

/// Runs both pipelines and compares the generated presentations.
pub fn identify(c: &FiniteWaldhausenCategory) -> Result<IdentifyReport, IdentifyError> {
    let d = d_star(c)?;
    let x = nerve_ws(c)?;
    let tp = TotalPresentation::new(&x)?;
    let cmp = tp.crossed_module()?;
    let (pn, nerve_rows) = phi_reflect(&cmp)?;
    identify_against(&d, &pn, &nerve_rows)
}

pub fn identify_against(
    d: &Dstar,
    pn: &crate::squad::SquadPresentation,
    nerve_rows: &[PresenRow],
) -> Result<IdentifyReport, IdentifyError> {
    let pd = &d.presentation;
    if pd.free() != pn.free() {
        return Err(IdentifyError::DictionaryMismatch(format!(
            "E0 {:?} vs {:?}; E1 {:?} vs {:?}",
            pd.free().e0().names(),
            pn.free().e0().names(),
            pd.free().e1().names(),
            pn.free().e1().names(),
        )));
    }
    let free = pd.free();
    let mut first_failure = None;

    // Membership of each side's relators in the other side's closures,
    // attributed to relation families.
    let mut rows = Vec::new();
    let mut n0_mutual = true;
    let mut n1_mutual = true;

    for relation in 1..=9u8 {
        let mut cat_count = 0usize;
        let mut cat_ok = true;
        // Degree-0 identification relators carry tags 1–2; degree-1 families
        // carry 4–9; (3) is structural on both sides ([*] is the empty word).
        if relation <= 2 {
            for (r, tag) in pd.r0().iter().zip(&d.r0_tags) {
                if tag.relation != relation {
                    continue;
                }
                cat_count += 1;
                if !pn.closure0().contains(free, r) {
                    cat_ok = false;
                    n0_mutual = false;
                    first_failure.get_or_insert(format!(
                        "category relator ({}) `{}` not in nerve N0",
                        relation, tag.instance
                    ));
                }
            }
        } else {
            for (r, tag) in pd.r1().iter().zip(&d.r1_tags) {
                if tag.relation != relation {
                    continue;
                }
                cat_count += 1;
                if !pn.closure1().contains(free, r) {
                    cat_ok = false;
                    n1_mutual = false;
                    first_failure.get_or_insert(format!(
                        "category relator ({}) `{}` not in nerve N1",
                        relation, tag.instance
                    ));
                }
            }
        }

        let mut nerve_count = 0usize;
        let mut nerve_ok = true;
        if relation <= 2 {
            // ∂2-identification rows: w-cells produce the (1) rows, flag
            // cells the (2) rows, matching the E1 name prefixes.
            for (l, r) in pn.r0().iter().enumerate() {
                let name = free.e1().name(l);
                let is_we = name.starts_with("w:");
                if (relation == 1) != is_we {
                    continue;
                }
                nerve_count += 1;
                if !pd.closure0().contains(free, r) {
                    nerve_ok = false;
                    n0_mutual = false;
                    first_failure.get_or_insert(format!(
                        "nerve boundary row for `{}` not in category N0",
                        name
                    ));
                }
            }
        } else if relation >= 4 {
            for (r, row) in pn.r1().iter().zip(nerve_rows) {
                if relation_of_row(*row) != relation {
                    continue;
                }
                nerve_count += 1;
                if !pd.closure1().contains(free, r) {
                    nerve_ok = false;
                    n1_mutual = false;
                    first_failure.get_or_insert(format!(
                        "nerve relator ({:?}) not in category N1",
                        row
                    ));
                }
            }
        }

        rows.push(RelationTrace {
            relation,
            nerve_family: nerve_family_of(relation).to_string(),
            category_instances: cat_count,
            nerve_instances: nerve_count,
            category_relators_in_nerve_closure: cat_ok,
            nerve_relators_in_category_closure: nerve_ok,
        });
    }

    let matched = n0_mutual && n1_mutual;
    Ok(IdentifyReport {
        object_generators: free.e0().len(),
        degree1_generators: free.e1().len(),
        rows,
        n0_mutual,
        n1_mutual,
        matched,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_identification() {
        let c = fixtures::trivial_category();
        let rep = identify(&c).unwrap();
        assert!(rep.matched, "{}", rep.render_text());
    }

    #[test]
    fn pointed_sets_two_identification() {
        let c = fixtures::pointed_sets(2);
        let rep = identify(&c).unwrap();
        assert!(rep.matched, "{}", rep.render_text());
        // Every relation family that exists on the category side is traced.
        for row in &rep.rows {
            if row.relation == 1 || row.relation == 2 {
                assert!(row.category_instances > 0);
                assert!(row.nerve_instances > 0);
            }
        }
    }
}
