//! Extra five-dimensional rows kept as data files in the input language.
//! Recognized `meta` keys: `row`, `conedim`, `dehn`, `image`, `provenance`.

use std::path::Path;

use serde::Serialize;

use super::{DehnType, StructureError};
use crate::lang::{parse, AlgebraDocument};
use crate::liealg::LieAlgebra;

const BUILTIN: &[(&str, &str)] = &[
    ("g5_20_0.lie", include_str!("../../../../catalog/extended/g5_20_0.lie")),
    ("g5_27.lie", include_str!("../../../../catalog/extended/g5_27.lie")),
    ("g5_28_1.lie", include_str!("../../../../catalog/extended/g5_28_1.lie")),
    ("g5_30_1.lie", include_str!("../../../../catalog/extended/g5_30_1.lie")),
    ("g5_32.lie", include_str!("../../../../catalog/extended/g5_32.lie")),
];

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedEntry {
    pub file: String,
    pub name: String,
    pub row: Option<String>,
    pub algebra: LieAlgebra,
    pub conedim: Option<usize>,
    pub dehn: DehnType,
    /// Expected image under the reduction, e.g. `R x g4_5(1,1)`.
    pub image: Option<String>,
    pub provenance: Option<String>,
    #[serde(skip)]
    pub document: AlgebraDocument,
}

pub fn parse_extended(file: &str, text: &str) -> Result<ExtendedEntry, StructureError> {
    let err = |message: String| StructureError::Extended {
        file: file.into(),
        message,
    };
    let doc = parse(text).map_err(|d| err(d.to_string()))?;
    let algebra = doc.to_algebra().map_err(|d| err(d.to_string()))?;
    algebra.validate().map_err(|v| err(v.to_string()))?;
    let conedim = doc
        .meta("conedim")
        .map(|s| s.parse::<usize>().map_err(|_| err(format!("bad conedim `{s}`"))))
        .transpose()?;
    let dehn = match doc.meta("dehn") {
        Some(s) => DehnType::parse(s).ok_or_else(|| err(format!("bad dehn type `{s}`")))?,
        None => DehnType::Unknown,
    };
    Ok(ExtendedEntry {
        file: file.into(),
        name: doc.name.clone(),
        row: doc.meta("row").map(str::to_string),
        conedim,
        dehn,
        image: doc.meta("image").map(str::to_string),
        provenance: doc.meta("provenance").map(str::to_string),
        algebra,
        document: doc,
    })
}

pub fn builtin_extended() -> Result<Vec<ExtendedEntry>, StructureError> {
    BUILTIN.iter().map(|(f, t)| parse_extended(f, t)).collect()
}

/// Every `*.lie` file in `dir`, sorted by file name.
pub fn load_extended_dir(dir: &Path) -> Result<Vec<ExtendedEntry>, StructureError> {
    let io = |e: std::io::Error| StructureError::Extended {
        file: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lie"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(io)?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            parse_extended(&name, &text)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_rows_parse_and_are_lie() {
        let rows = builtin_extended().unwrap();
        assert_eq!(rows.len(), BUILTIN.len());
        for r in &rows {
            assert_eq!(r.algebra.dim(), 5, "{}", r.file);
            assert!(r.image.is_some() && r.conedim.is_some(), "{}", r.file);
        }
    }

    #[test]
    fn bad_file_is_reported_with_name() {
        let e = parse_extended("bad.lie", "algebra x dim 3\n[e1, e2] = e3\n[e1, e3] = e1\n").unwrap_err();
        assert!(e.to_string().contains("bad.lie"), "{e}");
    }
}
