use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use latscope::lattice::dual;
use latscope::pattern::invariant_wave;
use latscope::{CrystalGroup, Wave, WaveSum};
use serde::Deserialize;

/// Either a path to a group file (relative to the pattern file) or an
/// inline group.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(PathBuf),
    Inline(CrystalGroup),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub group: GroupRef,
    pub waves: Vec<Wave>,
    /// Expand every wave into its orbit sum under the point group.
    #[serde(default)]
    pub invariant: bool,
}

impl PatternSpec {
    pub fn build(self, base: &Path) -> Result<(CrystalGroup, WaveSum)> {
        let group = match self.group {
            GroupRef::Inline(g) => g,
            GroupRef::Path(p) => crate::commands::read_json(&base.join(p))?,
        };
        let dim = group.dim();
        let mut sum = WaveSum::new(dim);
        if self.invariant {
            for w in &self.waves {
                let orbit = invariant_wave(&w.k, &group)
                    .with_context(|| format!("wave {}", latscope::linalg::fmt_vec(&w.k)))?;
                sum = sum.add(&orbit.scaled(w.coeff))?;
            }
        } else {
            let dual = dual(group.lattice())?;
            for w in self.waves {
                if w.k.len() != dim || !dual.contains(&w.k) {
                    bail!(
                        "wave {} is not a frequency of the group lattice",
                        latscope::linalg::fmt_vec(&w.k)
                    );
                }
                sum.push(w)?;
            }
        }
        Ok((group, sum))
    }
}
