//! Law and module files: a JSON format with rationals as strings, plus the
//! plain-text table renderer for reports.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraLaw;
use crate::bimodule::Bimodule;
use crate::cohomology::CohomologyReport;
use crate::error::{Error, Result};
use crate::rat;
use crate::sparse::{RankMethod, SparseMat};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
pub struct LawMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

/// On-disk form of an algebra law.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LawFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<LawMetadata>,
}

impl LawFile {
    pub fn from_law(law: &AlgebraLaw, metadata: Option<LawMetadata>) -> Self {
        let brackets = law
            .brackets()
            .map(|(i, j, terms)| BracketJson {
                i,
                j,
                terms: terms
                    .iter()
                    .map(|(k, c)| TermJson {
                        k: *k,
                        c: rat::to_string(c),
                    })
                    .collect(),
            })
            .collect();
        LawFile {
            dim: law.dim(),
            basis: law.basis_labels().to_vec(),
            brackets,
            metadata,
        }
    }

    pub fn into_law(&self) -> Result<AlgebraLaw> {
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                let terms = b
                    .terms
                    .iter()
                    .map(|t| Ok((t.k, rat::parse(&t.c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((b.i, b.j, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraLaw::from_brackets(self.dim, self.basis.clone(), brackets)
    }
}

pub fn law_to_json(law: &AlgebraLaw, metadata: Option<LawMetadata>) -> String {
    serde_json::to_string_pretty(&LawFile::from_law(law, metadata)).expect("law serialization")
}

pub fn law_from_json(s: &str) -> Result<AlgebraLaw> {
    let file: LawFile =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("law file: {e}")))?;
    file.into_law()
}

pub fn write_law(path: &Path, law: &AlgebraLaw, metadata: Option<LawMetadata>) -> Result<()> {
    std::fs::write(path, law_to_json(law, metadata))
        .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display())))
}

pub fn read_law(path: &Path) -> Result<AlgebraLaw> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("reading {}: {e}", path.display())))?;
    law_from_json(&s)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ActionEntryJson {
    pub row: usize,
    pub col: usize,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ActionJson {
    /// index of the acting algebra basis element
    pub x: usize,
    pub entries: Vec<ActionEntryJson>,
}

/// On-disk form of a module over a law stored in a separate file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleFile {
    pub dim_m: usize,
    /// path of the law file, relative to this file's directory
    pub law: String,
    pub left: Vec<ActionJson>,
    pub right: Vec<ActionJson>,
}

impl ModuleFile {
    pub fn from_module(module: &Bimodule, law_path: &str) -> Self {
        let side = |mats: &dyn Fn(usize) -> SparseMat| -> Vec<ActionJson> {
            (0..module.algebra.dim())
                .map(|x| {
                    let m = mats(x);
                    let mut entries = Vec::new();
                    for c in 0..m.cols() {
                        for (r, v) in m.col(c) {
                            entries.push(ActionEntryJson {
                                row: *r,
                                col: c,
                                c: rat::to_string(v),
                            });
                        }
                    }
                    ActionJson { x, entries }
                })
                .collect()
        };
        ModuleFile {
            dim_m: module.dim_m,
            law: law_path.to_string(),
            left: side(&|x| module.left(x).clone()),
            right: side(&|x| module.right(x).clone()),
        }
    }

    pub fn into_module(&self, law: AlgebraLaw, strict: bool) -> Result<Bimodule> {
        let parse_side = |actions: &[ActionJson]| -> Result<Vec<SparseMat>> {
            let mut mats = vec![SparseMat::zero(self.dim_m, self.dim_m); law.dim()];
            for a in actions {
                if a.x >= law.dim() {
                    return Err(Error::InvalidInput(format!(
                        "action index {} out of range",
                        a.x
                    )));
                }
                let triplets = a
                    .entries
                    .iter()
                    .map(|e| Ok((e.row, e.col, rat::parse(&e.c)?)))
                    .collect::<Result<Vec<_>>>()?;
                if triplets
                    .iter()
                    .any(|(r, c, _)| *r >= self.dim_m || *c >= self.dim_m)
                {
                    return Err(Error::InvalidInput("action entry out of range".into()));
                }
                mats[a.x] = SparseMat::from_triplets(self.dim_m, self.dim_m, triplets);
            }
            Ok(mats)
        };
        let left = parse_side(&self.left)?;
        let right = parse_side(&self.right)?;
        let module = Bimodule::new(law, left, right)?;
        if strict {
            module.checked()
        } else {
            Ok(module)
        }
    }
}

/// Read a module file, resolving its law file relative to the module file's
/// directory. `strict` re-checks the module axioms on load.
pub fn read_module(path: &Path, strict: bool) -> Result<(AlgebraLaw, Bimodule)> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("reading {}: {e}", path.display())))?;
    let file: ModuleFile =
        serde_json::from_str(&s).map_err(|e| Error::InvalidInput(format!("module file: {e}")))?;
    let law_path = path
        .parent()
        .map(|d| d.join(&file.law))
        .unwrap_or_else(|| file.law.clone().into());
    let law = read_law(&law_path)?;
    let module = file.into_module(law.clone(), strict)?;
    Ok((law, module))
}

pub fn write_module(path: &Path, module: &Bimodule, law_path: &str) -> Result<()> {
    let file = ModuleFile::from_module(module, law_path);
    let s = serde_json::to_string_pretty(&file).expect("module serialization");
    std::fs::write(path, s)
        .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display())))
}

fn method_string(m: &RankMethod) -> String {
    match m {
        RankMethod::Exact => "exact".to_string(),
        RankMethod::Modular(ps) => format!(
            "modular({})",
            ps.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

/// Column-aligned per-degree table of a cohomology report.
pub fn render_cohomology_table(report: &CohomologyReport) -> String {
    let mut rows = vec![vec![
        "degree".to_string(),
        "cochains".to_string(),
        "rank d".to_string(),
        "kernel".to_string(),
        "H".to_string(),
        "provenance".to_string(),
    ]];
    for e in &report.entries {
        rows.push(vec![
            e.degree.to_string(),
            e.dim_cochains.to_string(),
            e.rank_out.rank.to_string(),
            e.dim_kernel.to_string(),
            e.dim_h.to_string(),
            method_string(&e.rank_out.method),
        ]);
    }
    render_table(&rows)
}

pub fn render_table(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let cols = rows.iter().map(Vec::len).max().unwrap();
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{richardson_leibniz, sl2};

    #[test]
    fn law_round_trip() {
        for law in [sl2(), richardson_leibniz(2, 1)] {
            let json = law_to_json(&law, None);
            let back = law_from_json(&json).unwrap();
            assert_eq!(back, law);
        }
    }

    #[test]
    fn law_with_metadata_round_trips() {
        let meta = LawMetadata {
            constructor: Some("sl2".into()),
            params: None,
        };
        let json = law_to_json(&sl2(), Some(meta.clone()));
        let file: LawFile = serde_json::from_str(&json).unwrap();
        assert_eq!(file.metadata, Some(meta));
    }

    #[test]
    fn module_round_trip() {
        let law = sl2();
        let module = crate::bimodule::adjoint_bimodule(&law).unwrap();
        let file = ModuleFile::from_module(&module, "sl2.json");
        let json = serde_json::to_string(&file).unwrap();
        let back: ModuleFile = serde_json::from_str(&json).unwrap();
        let rebuilt = back.into_module(law, true).unwrap();
        assert_eq!(rebuilt, module);
    }

    #[test]
    fn strict_mode_rejects_corrupt_module() {
        let law = sl2();
        let module = crate::bimodule::adjoint_bimodule(&law).unwrap();
        let mut file = ModuleFile::from_module(&module, "sl2.json");
        file.left[0].entries[0].c = "7".into();
        let r = file.into_module(law, true);
        assert!(r.is_err());
    }

    #[test]
    fn rationals_serialize_as_strings() {
        let mut law = AlgebraLaw::abelian(2);
        law.add_bracket_terms(0, 1, vec![(0, rat::frac(-3, 2))])
            .unwrap();
        let json = law_to_json(&law, None);
        assert!(json.contains("\"-3/2\""));
    }
}
