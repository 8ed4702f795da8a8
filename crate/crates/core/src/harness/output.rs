//! CSV and SVG writers for every command.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::Engine;
use super::runner::{Summary, TrialRecord};
use crate::bits::{IndexString, TargetString};
use crate::bounds::{BoundKind, BoundQuery, Figure1Row};
use crate::error::{Error, Result};
use crate::fourier::BiasVector;
use crate::sampler::{CleanSampler, DenseSampler, DrawSource, NoiseParams, NoisyDenseSampler, NoisySampler};
use crate::statevector::circuit_distribution;

pub const TRIAL_HEADER: &str = "trial_index,n,c,m_used,algorithm,success,subroutine_successes,wall_time_ms,seed";
pub const SUMMARY_HEADER: &str = "trials,successes,success_rate,ci_low,ci_high,target_rate,meets_target";
pub const SAMPLE_HEADER: &str = "outcome,count,frequency,reference";
pub const BOUNDS_HEADER: &str = "bound,n,c,delta,rho,epsilon,value,regime_ok";
pub const FIGURE1_HEADER: &str = "n,max_bias_thm53,min_bias_thm74";

/// Opens `path` for writing, refusing to replace an existing file unless `force`.
pub fn create_output(path: &Path, force: bool) -> Result<BufWriter<File>> {
    if path.exists() && !force {
        return Err(Error::Config(format!("{} already exists; pass force to overwrite", path.display())));
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// Path of the summary file written next to a trial CSV.
pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".summary.csv");
    out.with_file_name(name)
}

pub fn write_trials<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(TRIAL_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trials<R: std::io::Read>(input: R) -> Result<Vec<TrialRecord>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Error::from)).collect()
}

pub fn write_summary<W: Write>(out: W, summary: &Summary) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SUMMARY_HEADER.split(','))?;
    w.serialize(summary)?;
    w.flush()?;
    Ok(())
}

/// Outcome histogram key: failures sort before every bit string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum OutcomeKey {
    Fail,
    Bits(String),
}

/// Probability of one measurement outcome under the factorized law, with
/// optional label noise averaged in.
pub fn reference_probability(
    a: &TargetString,
    mu: &BiasVector,
    eta: Option<&NoiseParams>,
    outcome: Option<&IndexString>,
) -> f64 {
    let Some(j) = outcome else { return 0.5 };
    let p: f64 = (0..a.len())
        .map(|i| {
            let p_one = match eta {
                Some(e) => {
                    let r = e.flip_probability(i);
                    if a.get(i) { 1.0 - r } else { r }
                }
                None => a.get(i) as u8 as f64,
            };
            let q = p_one * (1.0 - mu.get(i) * mu.get(i));
            if j.get(i) { q } else { 1.0 - q }
        })
        .product();
    0.5 * p
}

/// Draws `shots` outcomes and writes `outcome,count,frequency,reference`,
/// one row per observed outcome with `fail` first.
pub fn write_sample_histogram<W: Write>(
    out: W,
    a: &TargetString,
    mu: &BiasVector,
    eta: Option<&NoiseParams>,
    shots: u64,
    engine: Engine,
    seed: u64,
) -> Result<()> {
    mu.check_len(a.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<OutcomeKey, (u64, Option<IndexString>)> = BTreeMap::new();
    let mut draw_all = |source: &mut dyn FnMut(&mut ChaCha8Rng) -> Option<IndexString>| {
        for _ in 0..shots {
            let bits = source(&mut rng);
            let key = bits.as_ref().map_or(OutcomeKey::Fail, |b| OutcomeKey::Bits(b.to_string()));
            counts.entry(key).or_insert((0, bits)).0 += 1;
        }
    };
    match (engine, eta) {
        (Engine::Analytic, None) => {
            let mut s = CleanSampler::new(a, mu)?;
            draw_all(&mut |r| s.draw(r).bits().cloned());
        }
        (Engine::Analytic, Some(eta)) => {
            let mut s = NoisySampler::new(a, mu, eta)?;
            draw_all(&mut |r| s.draw(r).bits().cloned());
        }
        (Engine::Statevector, None) => {
            let mut s = DenseSampler::new(&circuit_distribution(a, mu)?);
            draw_all(&mut |r| s.draw(r).bits().cloned());
        }
        (Engine::Statevector, Some(eta)) => {
            let mut s = NoisyDenseSampler::new(a, mu, eta)?;
            draw_all(&mut |r| s.draw(r).bits().cloned());
        }
    }
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SAMPLE_HEADER.split(','))?;
    for (key, (count, bits)) in &counts {
        let label = match key {
            OutcomeKey::Fail => "fail".to_string(),
            OutcomeKey::Bits(s) => s.clone(),
        };
        let reference = reference_probability(a, mu, eta, bits.as_ref());
        w.write_record([label, count.to_string(), (*count as f64 / shots as f64).to_string(), reference.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Parameter axes of a bounds table. An empty axis yields an empty table.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundsGrid {
    pub bounds: Vec<BoundKind>,
    pub n: Vec<usize>,
    pub c: Vec<f64>,
    pub delta: Vec<f64>,
    /// Empty means the parameter is left unset.
    pub rho: Vec<f64>,
    pub epsilon: Vec<f64>,
}

/// Parses `"a,b,c"` or an inclusive range `"start:stop:step"`.
pub fn parse_axis(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [_] => super::config::parse_f64_list(s),
        [start, stop, step] => {
            let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad range bound {t:?}")));
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) {
                return Err(Error::Config("range step must be positive".into()));
            }
            let count = ((stop - start) / step + 1e-9).floor();
            if count < 0.0 {
                return Ok(Vec::new());
            }
            // rounding keeps 0.9 + 5 * 0.01 from printing as 0.9500000000000001
            Ok((0..=count as usize).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect())
        }
        _ => Err(Error::Config(format!("cannot parse axis {s:?}"))),
    }
}

pub fn parse_usize_axis(s: &str) -> Result<Vec<usize>> {
    parse_axis(s)?
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(Error::Config(format!("{v} is not a nonnegative integer")))
            }
        })
        .collect()
}

fn optional_axis(values: &[f64]) -> Vec<Option<f64>> {
    if values.is_empty() {
        vec![None]
    } else {
        values.iter().copied().map(Some).collect()
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One row per bound and grid point, bounds outermost.
pub fn write_bounds_table<W: Write>(out: W, grid: &BoundsGrid) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BOUNDS_HEADER.split(','))?;
    let rhos = optional_axis(&grid.rho);
    let epss = optional_axis(&grid.epsilon);
    for &kind in &grid.bounds {
        for &n in &grid.n {
            for &c in &grid.c {
                for &delta in &grid.delta {
                    for &rho in &rhos {
                        for &eps in &epss {
                            let q = BoundQuery { n, c, delta, rho, epsilon: eps, mu_min: None };
                            let r = kind.evaluate(&q)?;
                            w.write_record([
                                kind.name().to_string(),
                                n.to_string(),
                                c.to_string(),
                                delta.to_string(),
                                opt_cell(rho),
                                opt_cell(eps),
                                r.value.to_string(),
                                r.regime_ok.to_string(),
                            ])?;
                        }
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// `x` with `digits` significant digits in fixed notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_figure1_csv<W: Write>(mut out: W, rows: &[Figure1Row]) -> Result<()> {
    writeln!(out, "{FIGURE1_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{}",
            r.n,
            format_significant(r.max_bias_thm53, 10),
            format_significant(r.min_bias_thm74, 10)
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Blue crosses for the majority-vote bias ceiling, a red line for the
/// lower-bound bias floor. Log-scaled n axis when the range spans more than
/// a factor of 50.
pub fn figure1_svg(rows: &[Figure1Row]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 480.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 30.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 60.0;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if rows.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }
    let n_lo = rows.first().map(|r| r.n).unwrap_or(3) as f64;
    let n_hi = rows.last().map(|r| r.n).unwrap_or(3).max(rows[0].n + 1) as f64;
    let log_x = n_hi / n_lo > 50.0;
    let tx = |n: f64| {
        let t = if log_x { (n.ln() - n_lo.ln()) / (n_hi.ln() - n_lo.ln()) } else { (n - n_lo) / (n_hi - n_lo) };
        LEFT + t * (W - LEFT - RIGHT)
    };
    let y_lo = rows.iter().map(|r| r.min_bias_thm74.min(r.max_bias_thm53)).fold(0.0f64, f64::min);
    let y_hi = 1.0;
    let ty = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * (H - TOP - BOTTOM);

    let _ = writeln!(
        svg,
        r#"<line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}" stroke="black"/>"#,
        b = H - BOTTOM,
        r = W - RIGHT
    );
    for k in 0..=4 {
        let y = y_lo + (y_hi - y_lo) * k as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{py:.1}" font-size="11" text-anchor="end">{y:.2}</text>"#,
            x = LEFT - 6.0,
            py = ty(y) + 4.0
        );
    }
    for n in [n_lo, n_hi] {
        let _ = writeln!(
            svg,
            r#"<text x="{px:.1}" y="{y}" font-size="11" text-anchor="middle">{n}</text>"#,
            px = tx(n),
            y = H - BOTTOM + 16.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-size="13" text-anchor="middle">n{scale}</text>"#,
        x = (LEFT + W - RIGHT) / 2.0,
        y = H - 20.0,
        scale = if log_x { " (log scale)" } else { "" }
    );

    let points: Vec<String> =
        rows.iter().map(|r| format!("{:.2},{:.2}", tx(r.n as f64), ty(r.min_bias_thm74))).collect();
    let _ = writeln!(svg, r#"<polyline fill="none" stroke="red" stroke-width="1.5" points="{}"/>"#, points.join(" "));
    for r in rows {
        let (x, y) = (tx(r.n as f64), ty(r.max_bias_thm53));
        let _ = writeln!(
            svg,
            r#"<path d="M{:.2} {:.2} L{:.2} {:.2} M{:.2} {:.2} L{:.2} {:.2}" stroke="blue" stroke-width="1"/>"#,
            x - 3.0,
            y - 3.0,
            x + 3.0,
            y + 3.0,
            x - 3.0,
            y + 3.0,
            x + 3.0,
            y - 3.0
        );
    }
    let lx = W - RIGHT - 260.0;
    let _ = writeln!(
        svg,
        r#"<path d="M{a:.0} {b:.0} L{c:.0} {d:.0} M{a:.0} {d:.0} L{c:.0} {b:.0}" stroke="blue"/><text x="{t:.0}" y="{ty:.0}" font-size="12">max_bias_thm53: majority-vote ceiling</text>"#,
        a = lx,
        b = TOP + 152.0,
        c = lx + 6.0,
        d = TOP + 158.0,
        t = lx + 14.0,
        ty = TOP + 159.0
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{a:.0}" y1="{y:.0}" x2="{c:.0}" y2="{y:.0}" stroke="red" stroke-width="1.5"/><text x="{t:.0}" y="{ty:.0}" font-size="12">min_bias_thm74: lower-bound floor</text>"#,
        a = lx - 4.0,
        c = lx + 10.0,
        y = TOP + 175.0,
        t = lx + 14.0,
        ty = TOP + 179.0
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::figure1_curves;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.25, 10), "0.2500000000");
        assert_eq!(format_significant(0.8426232517, 10), "0.8426232517");
        assert_eq!(format_significant(-0.10452, 4), "-0.1045");
        assert_eq!(format_significant(123.456, 4), "123.5");
    }

    #[test]
    fn axes() {
        assert_eq!(parse_axis("0.9:1:0.05").unwrap(), vec![0.9, 0.95, 1.0]);
        assert_eq!(parse_axis("1,2.5").unwrap(), vec![1.0, 2.5]);
        assert!(parse_axis("").unwrap().is_empty());
        assert!(parse_axis("2:1:1").unwrap().is_empty());
        assert_eq!(parse_usize_axis("4:8:2").unwrap(), vec![4, 6, 8]);
        assert!(parse_usize_axis("1.5").is_err());
        assert!(parse_axis("1:2").is_err());
    }

    #[test]
    fn bounds_table_rows() {
        let grid = BoundsGrid {
            bounds: vec![BoundKind::Majority],
            n: vec![8],
            c: vec![0.95],
            delta: vec![0.05],
            ..Default::default()
        };
        let mut buf = Vec::new();
        write_bounds_table(&mut buf, &grid).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{BOUNDS_HEADER}\nmajority,8,0.95,0.05,,,17,true\n"));
        let mut buf = Vec::new();
        write_bounds_table(&mut buf, &BoundsGrid::default()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{BOUNDS_HEADER}\n"));
    }

    #[test]
    fn histogram_header_only_for_zero_shots() {
        let a: TargetString = "11".parse().unwrap();
        let mu = BiasVector::new(vec![0.6, 0.0]).unwrap();
        let mut buf = Vec::new();
        write_sample_histogram(&mut buf, &a, &mu, None, 0, Engine::Analytic, 1).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{SAMPLE_HEADER}\n"));
    }

    #[test]
    fn trial_csv_round_trip() {
        let rec = TrialRecord {
            trial_index: 3,
            n: 8,
            c: 0.5,
            m_used: 13,
            algorithm: "or_aggregate".into(),
            success: 1,
            subroutine_successes: 7,
            wall_time_ms: 0,
            seed: 42,
        };
        let mut buf = Vec::new();
        write_trials(&mut buf, std::slice::from_ref(&rec)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(TRIAL_HEADER));
        assert_eq!(read_trials(buf.as_slice()).unwrap(), vec![rec]);
    }

    #[test]
    fn figure_outputs() {
        let rows = figure1_curves(3, 10).unwrap();
        let mut buf = Vec::new();
        write_figure1_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\n8,0.2500000000,0.8426232517\n"));
        let svg = figure1_svg(&rows);
        assert!(svg.contains("stroke=\"red\"") && svg.contains("stroke=\"blue\""));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn summary_path_naming() {
        assert_eq!(summary_path(Path::new("/tmp/run.csv")), PathBuf::from("/tmp/run.summary.csv"));
    }
}
