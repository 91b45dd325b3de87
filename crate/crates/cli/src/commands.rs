use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use latscope::classify::catalog::hexagonal_catalog;
use latscope::classify::tables::{self, check_group, check_tables, COLUMNS};
use latscope::classify::{classify_case, hex_profile, width_class, HexProfile, LatticeName, Target};
use latscope::crystal::SigmaData;
use latscope::exactnum::set_sign_start_precision;
use latscope::lattice::{band_period_check, dual, holohedry, vertical_period};
use latscope::linalg::fmt_vec;
use latscope::pattern::{project, render, restrict};
use latscope::projection::{period_module, Derivation};
use latscope::{BandSpec, CrystalGroup, QVec, Window, ZModule, QF};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::pattern_spec::PatternSpec;
use crate::Command;

pub struct Output {
    pub bytes: Vec<u8>,
    pub code: u8,
}

impl Output {
    fn json<T: Serialize>(value: &T) -> Result<Self> {
        Self::json_with_code(value, 0)
    }

    fn json_with_code<T: Serialize>(value: &T, code: u8) -> Result<Self> {
        let mut bytes = serde_json::to_vec(value)?;
        bytes.push(b'\n');
        Ok(Output { bytes, code })
    }

    fn text(s: String) -> Self {
        Output { bytes: s.into_bytes(), code: 0 }
    }
}

pub fn apply_precision_env() -> Result<()> {
    if let Ok(v) = std::env::var("LATSCOPE_PRECISION_BITS") {
        let bits: u32 = v
            .trim()
            .parse()
            .map_err(|_| anyhow!("LATSCOPE_PRECISION_BITS must be a positive integer, got `{v}`"))?;
        set_sign_start_precision(bits);
    }
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    latscope::io::parse_json(&text).with_context(|| path.display().to_string())
}

fn parse_qf(s: &str) -> Result<QF> {
    QF::from_str(s.trim()).with_context(|| format!("invalid number `{s}`"))
}

fn parse_list(s: &str) -> Result<QVec> {
    s.split(',').map(parse_qf).collect()
}

fn fmt_basis(b: &[QVec]) -> String {
    let parts: Vec<String> = b.iter().map(|v| fmt_vec(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    let cells: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    cells.join(",") + "\n"
}

fn profile_map(p: &HexProfile) -> BTreeMap<String, String> {
    p.entries.iter().map(|(c, n)| (c.to_string(), n.to_string())).collect()
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Dual(a) => {
            let l: ZModule = read_json(&a.lattice)?;
            Output::json(&dual(&l)?)
        }
        Command::Holohedry(a) => {
            let l: ZModule = read_json(&a.lattice)?;
            let elems = holohedry(&l)?;
            Output::json(&json!({ "order": elems.len(), "elements": elems }))
        }
        Command::CheckPeriod { lattice, y0, p } => {
            let l: ZModule = read_json(&lattice.lattice)?;
            let band = BandSpec::new(parse_qf(&y0)?)?;
            let period = band_period_check(&l, &band, &parse_list(&p)?)?;
            Output::json(&json!({ "period": period }))
        }
        Command::Periods { group, y0 } => {
            let g: CrystalGroup = read_json(&group.group)?;
            let mut out = csv_row(&["y0", "rank", "basis", "derivation"].map(String::from));
            for w in &y0 {
                let band = BandSpec::new(parse_qf(w)?)?;
                let pm = period_module(&g, &band)?;
                let derivation = match pm.derivation {
                    Derivation::WithVertical => "with_vertical",
                    Derivation::WithoutVertical => "without_vertical",
                };
                out += &csv_row(&[
                    band.width().to_string(),
                    pm.rank().to_string(),
                    fmt_basis(pm.module.basis()),
                    derivation.to_string(),
                ]);
            }
            Ok(Output::text(out))
        }
        Command::Classify { group, a0, b0 } => {
            let g: CrystalGroup = read_json(&group.group)?;
            let target = match (a0, b0) {
                (Some(a), Some(b)) => Target::new(parse_list(&a)?, parse_list(&b)?)?,
                _ => Target::hexagonal(),
            };
            let case = classify_case(&g, &target)?;
            let profile = hex_profile(&g)?;
            Output::json(&json!({ "case": case, "profile": profile_map(&profile) }))
        }
        Command::HexTable { group: Some(path), check_tables } => {
            let g: CrystalGroup = read_json(&path)?;
            let profile = profile_map(&hex_profile(&g)?);
            if !check_tables {
                let case = classify_case(&g, &Target::hexagonal())?;
                return Output::json(&json!({ "case": case, "profile": profile }));
            }
            let check = check_group(&g)?;
            let code = if check.mismatches.is_empty() && check.column.is_some() { 0 } else { 3 };
            Output::json_with_code(
                &json!({ "case": check.case, "column": check.column, "profile": profile, "mismatches": check.mismatches }),
                code,
            )
        }
        Command::HexTable { group: None, check_tables: false } => {
            let rows = hexagonal_catalog()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    Ok(json!({
                        "column": i,
                        "case": e.case,
                        "v1": e.v1,
                        "profile": profile_map(&hex_profile(&e.group)?),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Output::json(&rows)
        }
        Command::HexTable { group: None, check_tables: true } => {
            let cat = hexagonal_catalog();
            let mismatches = check_tables(&cat, true)?;
            let literal = check_tables(&cat, false)?.len();
            let code = if mismatches.is_empty() { 0 } else { 3 };
            Output::json_with_code(
                &json!({
                    "columns": COLUMNS.len(),
                    "mismatches": mismatches,
                    "errata": tables::ERRATA.len(),
                    "literal_disagreements": literal,
                }),
                code,
            )
        }
        Command::Sweep { group, start, step, count } => {
            let g: CrystalGroup = read_json(&group.group)?;
            let (start, step) = (parse_qf(&start)?, parse_qf(&step)?);
            if !step.is_positive() {
                bail!("--step must be positive");
            }
            let c = vertical_period(g.lattice())?;
            let y1 = match g.sigma_data()? {
                SigmaData::InJ { y1, .. } => Some(y1),
                SigmaData::NotInJ => None,
            };
            let mut out = csv_row(&["y0", "class", "rank", "basis", "name"].map(String::from));
            for i in 0..count {
                let y0 = &start + &(&step * &QF::from_int(i as i64));
                let band = BandSpec::new(y0.clone())?;
                let pm = period_module(&g, &band)?;
                let class = match &c {
                    Some(c) => width_class(&y0, c, y1.as_ref())?.to_string(),
                    None => "-".into(),
                };
                let name = if g.dim() == 3 && pm.rank() == 2 {
                    LatticeName::identify(&pm.module).to_string()
                } else {
                    "-".into()
                };
                out += &csv_row(&[y0.to_string(), class, pm.rank().to_string(), fmt_basis(pm.module.basis()), name]);
            }
            Ok(Output::text(out))
        }
        Command::Render { pattern, y0, r, window, px } => {
            let spec: PatternSpec = read_json(&pattern)?;
            let base = pattern.parent().unwrap_or(Path::new("."));
            let (_, f) = spec.build(base)?;
            let f = match (y0, r) {
                (Some(y0), _) => project(&f, &parse_qf(&y0)?)?,
                (None, Some(r)) => restrict(&f, &parse_qf(&r)?)?,
                (None, None) if f.dim() == 2 => f,
                (None, None) => bail!("a pattern of dimension {} needs --y0 or --r", f.dim()),
            };
            let w: Vec<f64> = parse_list(&window)?.iter().map(QF::to_f64).collect();
            let [xmin, xmax, ymin, ymax] = w[..] else {
                bail!("--window needs four values xmin,xmax,ymin,ymax");
            };
            let dims: Vec<usize> = px
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .context("--px needs two integers w,h")?;
            let [pw, ph] = dims[..] else {
                bail!("--px needs two integers w,h");
            };
            let img = render(&f, Window { xmin, xmax, ymin, ymax }, (pw, ph))?;
            Ok(Output { bytes: img.to_pgm(), code: 0 })
        }
        Command::Validate(a) => {
            let g: CrystalGroup = read_json(&a.group)?;
            let violations = g.validate();
            let code = if violations.is_empty() { 0 } else { 2 };
            Output::json_with_code(&json!({ "valid": violations.is_empty(), "violations": violations }), code)
        }
    }
}
