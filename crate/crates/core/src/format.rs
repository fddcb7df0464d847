//! Text format for labeled complexes.
//!
//! ```toml
//! format = "kyfan-complex/1"
//! vertices = ["+1", "+2", "-1", "-2"]
//! facets = [["+1", "+2"], ["+1", "-2"], ["+2", "-1"], ["-1", "-2"]]
//!
//! [meta]
//! n = 1
//! k = 0
//! colors = 2            # optional, defaults to the largest |label|
//! coloring = "nice"     # or "candidate"
//! description = "square"
//!
//! [bundle]              # optional total Stiefel-Whitney class
//! ring = "a:1:2"
//! w = "1 + a"
//!
//! [involution]
//! "+1" = "-1"
//! ...
//!
//! [labels]
//! "+1" = 1
//! ...
//! ```
//!
//! Sections may appear in any order. [`write_fixture`] emits the canonical form:
//! vertex names sorted, each facet sorted, facets sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{ColoringStatus, Fixture};
use crate::simplicial::{BundleMeta, Involution, LabeledComplex, NiceColoring, Simplex, SimplicialComplex};
use crate::z2::{GradedRing, RingElement, TotalClass};

pub const FORMAT_TAG: &str = "kyfan-complex/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledComplexFile {
    pub format: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub meta: MetaSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleSection>,
    pub involution: BTreeMap<String, String>,
    pub labels: BTreeMap<String, i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetaSection {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSection {
    pub ring: String,
    pub w: String,
}

impl LabeledComplexFile {
    pub fn from_fixture(fx: &Fixture) -> Self {
        let lc = &fx.lc;
        let c = &lc.complex;
        let mut vertices = c.names().to_vec();
        vertices.sort();
        let mut facets: Vec<Vec<String>> = c
            .facets()
            .iter()
            .map(|f| {
                let mut names: Vec<String> = f.vertices().iter().map(|v| c.name(*v).to_string()).collect();
                names.sort();
                names
            })
            .collect();
        facets.sort();
        let involution = (0..c.vertex_count())
            .map(|v| (c.name(v).to_string(), c.name(lc.involution.apply(v)).to_string()))
            .collect();
        let labels = (0..c.vertex_count()).map(|v| (c.name(v).to_string(), lc.coloring.label(v))).collect();
        let bundle = lc.bundle_class.as_ref().map(|w| BundleSection { ring: w.ring().spec_string(), w: w.to_string() });
        Self {
            format: FORMAT_TAG.to_string(),
            vertices,
            facets,
            meta: MetaSection {
                n: lc.meta.n,
                k: lc.meta.k,
                colors: Some(lc.coloring.n_colors()),
                coloring: Some(fx.status.as_str().to_string()),
                description: (!fx.description.is_empty()).then(|| fx.description.clone()),
            },
            bundle,
            involution,
            labels,
        }
    }

    pub fn into_fixture(self) -> Result<Fixture> {
        if self.format != FORMAT_TAG {
            return Err(Error::Format(format!("unsupported format `{}`, expected `{FORMAT_TAG}`", self.format)));
        }
        let names = self.vertices;
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));

        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| lookup(v)).collect::<Result<Vec<_>>>().map(Simplex::new))
            .collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::new(names.clone(), facets)?;

        for key in self.involution.keys().chain(self.labels.keys()) {
            lookup(key)?;
        }
        let mut image = Vec::with_capacity(names.len());
        let mut labels = Vec::with_capacity(names.len());
        for name in &names {
            let target = self.involution.get(name).ok_or_else(|| Error::MissingEntry(name.clone(), "involution"))?;
            image.push(lookup(target)?);
            labels.push(*self.labels.get(name).ok_or_else(|| Error::MissingEntry(name.clone(), "labels"))?);
        }
        let coloring = NiceColoring::new(labels, self.meta.colors)?;
        let meta = BundleMeta { n: self.meta.n, k: self.meta.k };
        let mut lc = LabeledComplex::new(complex, Involution::new(image), coloring, meta)?;
        if let Some(b) = self.bundle {
            let ring = GradedRing::parse(&b.ring)?;
            let w = TotalClass::from_total(&RingElement::parse(&ring, &b.w)?, meta.n as u32 + 1)?;
            lc = lc.with_bundle_class(w)?;
        }
        let status = match self.meta.coloring.as_deref() {
            None | Some("nice") => ColoringStatus::Nice,
            Some("candidate") => ColoringStatus::Candidate,
            Some(other) => {
                return Err(Error::Format(format!("meta.coloring must be `nice` or `candidate`, got `{other}`")))
            }
        };
        Ok(Fixture { lc, status, description: self.meta.description.unwrap_or_default() })
    }
}

pub fn read_fixture(text: &str) -> Result<Fixture> {
    let doc: LabeledComplexFile = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_fixture()
}

pub fn write_fixture(fx: &Fixture) -> String {
    toml::to_string(&LabeledComplexFile::from_fixture(fx)).expect("file document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cross_polytope_sphere, hopf_s3};

    const SQUARE: &str = r#"
format = "kyfan-complex/1"
vertices = ["a", "b", "c", "d"]
facets = [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]

[labels]
a = 1
b = 2
c = -1
d = -2

[involution]
a = "c"
b = "d"
c = "a"
d = "b"

[meta]
n = 1
k = 0
"#;

    #[test]
    fn parses_hand_written_file() {
        let fx = read_fixture(SQUARE).unwrap();
        assert_eq!(fx.lc.coloring.n_colors(), 2);
        assert_eq!(fx.lc.complex.facets().len(), 4);
        assert_eq!(fx.status, ColoringStatus::Nice);
        assert!(fx.lc.bundle_class.is_none());
    }

    #[test]
    fn canonical_round_trip() {
        for fx in [cross_polytope_sphere(2), hopf_s3(), read_fixture(SQUARE).unwrap()] {
            let text = write_fixture(&fx);
            let again = write_fixture(&read_fixture(&text).unwrap());
            assert_eq!(text, again);
        }
    }

    #[test]
    fn bundle_class_survives() {
        let text = write_fixture(&hopf_s3());
        let fx = read_fixture(&text).unwrap();
        assert_eq!(fx.lc.bundle_class.unwrap().to_string(), "1 + b");
    }

    #[test]
    fn diagnostics() {
        let truncated = &SQUARE[..SQUARE.len() / 2];
        let err = read_fixture(truncated).unwrap_err();
        assert!(matches!(err, Error::Format(_)), "{err}");
        let missing = SQUARE.replace("d = -2\n", "");
        assert_eq!(read_fixture(&missing).unwrap_err(), Error::MissingEntry("d".into(), "labels"));
        let unknown = SQUARE.replace("[\"d\", \"a\"]", "[\"d\", \"z\"]");
        assert_eq!(read_fixture(&unknown).unwrap_err(), Error::UnknownVertex("z".into()));
    }
}
