//! Certificate and report documents: the JSON shapes emitted by the CLI and
//! re-checked by `folkman verify` without re-running any search.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use folkman_core::arrow::{ArrowCertificate, ArrowVerdict, FolkmanBundle, SearchStats};
use folkman_core::bounds::ChainReport;
use folkman_core::coloring::find_monochromatic_clique;
use folkman_core::graph::VertexSet;
use folkman_core::interval::{LogInterval, Verdict};
use folkman_core::{graph6, EdgeColoring, Graph};

/// Self-contained arrowing certificate: the host travels as graph6 and the
/// witness as one color per edge in canonical edge order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub host: String,
    pub k: u32,
    pub r: u32,
    pub verdict: ArrowVerdict,
    pub witness: Option<Vec<u8>>,
    pub stats: SearchStats,
}

impl ArrowDoc {
    pub fn new(g: &Graph, cert: &ArrowCertificate) -> Result<ArrowDoc> {
        Ok(ArrowDoc {
            host: graph6::encode(g)?,
            k: cert.k,
            r: cert.r,
            verdict: cert.verdict,
            witness: cert.witness.as_ref().map(|w| w.colors().to_vec()),
            stats: cert.stats,
        })
    }

    /// Re-checks the checkable part: a `NonArrowing` witness must be a
    /// proper coloring of the host; `Arrows` must claim exhaustion and
    /// carry no witness.
    pub fn verify(&self) -> Result<()> {
        let g = graph6::decode(&self.host).context("certificate host is not valid graph6")?;
        match self.verdict {
            ArrowVerdict::NonArrowing => {
                let colors = self
                    .witness
                    .clone()
                    .context("NonArrowing certificate lacks a witness")?;
                let coloring = EdgeColoring::new(self.r, colors)?;
                match find_monochromatic_clique(&g, &coloring, self.k as usize)? {
                    None => Ok(()),
                    Some(w) => bail!(
                        "witness is not proper: monochromatic K_{} in color {} on {:?}",
                        self.k,
                        w.color,
                        w.vertices
                    ),
                }
            }
            ArrowVerdict::Arrows => {
                if self.witness.is_some() {
                    bail!("Arrows certificate must not carry a witness");
                }
                if !self.stats.exhausted {
                    bail!("Arrows certificate does not claim an exhausted search");
                }
                Ok(())
            }
            ArrowVerdict::Indeterminate => {
                if self.witness.is_some() {
                    bail!("Indeterminate certificate must not carry a witness");
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliqueDoc {
    pub l: u32,
    pub has_clique: bool,
    pub witness: Option<Vec<usize>>,
}

/// Folkman-property bundle: both sub-certificates plus the combined verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FolkmanDoc {
    pub host: String,
    pub k: u32,
    pub r: u32,
    pub l: u32,
    pub folkman: Option<bool>,
    pub arrowing: ArrowDoc,
    pub clique: CliqueDoc,
}

impl FolkmanDoc {
    pub fn new(g: &Graph, bundle: &FolkmanBundle) -> Result<FolkmanDoc> {
        Ok(FolkmanDoc {
            host: graph6::encode(g)?,
            k: bundle.k,
            r: bundle.r,
            l: bundle.l,
            folkman: bundle.folkman,
            arrowing: ArrowDoc::new(g, &bundle.arrowing)?,
            clique: CliqueDoc {
                l: bundle.l,
                has_clique: bundle.clique.has_clique,
                witness: bundle.clique.witness.clone(),
            },
        })
    }

    pub fn verify(&self) -> Result<()> {
        let g = graph6::decode(&self.host).context("bundle host is not valid graph6")?;
        self.arrowing.verify()?;
        if self.arrowing.host != self.host {
            bail!("arrowing certificate is for a different host");
        }
        if self.clique.has_clique {
            let w = self
                .clique
                .witness
                .as_ref()
                .context("clique claim lacks a witness")?;
            if w.len() != self.l as usize {
                bail!("clique witness has {} vertices, expected {}", w.len(), self.l);
            }
            let set = VertexSet::from_iter(w.iter().copied());
            if !g.is_clique(&set) {
                bail!("clique witness is not a clique in the host");
            }
        } else if g.has_clique(self.l as usize) {
            bail!("host contains a K_{} despite the freeness claim", self.l);
        }
        let expected = if self.clique.has_clique {
            Some(false)
        } else {
            match self.arrowing.verdict {
                ArrowVerdict::Arrows => Some(true),
                ArrowVerdict::NonArrowing => Some(false),
                ArrowVerdict::Indeterminate => None,
            }
        };
        if self.folkman != expected {
            bail!(
                "combined verdict {:?} inconsistent with sub-certificates (expected {:?})",
                self.folkman,
                expected
            );
        }
        Ok(())
    }
}

/// Re-derives every chain verdict from the recorded interval endpoints.
pub fn verify_chain_report(report: &ChainReport) -> Result<()> {
    for item in &report.items {
        let lhs = loginterval_from_pair(item.lhs_log2)?;
        let rhs = loginterval_from_pair(item.rhs_log2)?;
        let (verdict, _) = lhs.certify_le(&rhs);
        if verdict != item.verdict {
            bail!(
                "item {}: recorded verdict {:?} does not reproduce from side values ({:?})",
                item.id,
                item.verdict,
                verdict
            );
        }
    }
    Ok(())
}

fn loginterval_from_pair(pair: [f64; 2]) -> Result<LogInterval> {
    let iv = folkman_core::Interval::new(pair[0], pair[1])
        .map_err(|e| anyhow::anyhow!("malformed interval endpoints: {e}"))?;
    Ok(LogInterval::from_log2(iv))
}

/// Detects the document kind by shape and verifies it.
pub fn verify_any(json: &str) -> Result<String> {
    let value: serde_json::Value = serde_json::from_str(json).context("not valid JSON")?;
    let obj = value
        .as_object()
        .context("expected a JSON object certificate")?;
    if obj.contains_key("items") {
        let report: ChainReport = serde_json::from_value(value.clone())?;
        verify_chain_report(&report)?;
        return Ok("chain report: all verdicts reproduce from recorded side values".into());
    }
    if obj.contains_key("arrowing") {
        let doc: FolkmanDoc = serde_json::from_value(value.clone())?;
        doc.verify()?;
        return Ok(format!(
            "folkman bundle for host {}: sub-certificates verified",
            doc.host
        ));
    }
    if obj.contains_key("host") && obj.contains_key("verdict") {
        let doc: ArrowDoc = serde_json::from_value(value.clone())?;
        doc.verify()?;
        return Ok(format!("arrow certificate for host {}: verified", doc.host));
    }
    bail!("unrecognized certificate shape")
}

/// Exit-code contract: 0 = positive verdict, 1 = negative/CertifiedFalse,
/// 2 = usage, 3 = indeterminate or budget exhaustion.
pub fn exit_code_for_verdict(v: Verdict) -> i32 {
    match v {
        Verdict::CertifiedTrue => 0,
        Verdict::CertifiedFalse => 1,
        Verdict::Indeterminate => 3,
    }
}

pub fn exit_code_for_arrow(v: ArrowVerdict) -> i32 {
    match v {
        ArrowVerdict::Arrows => 0,
        ArrowVerdict::NonArrowing => 1,
        ArrowVerdict::Indeterminate => 3,
    }
}
