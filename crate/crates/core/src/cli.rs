//! Front end shared by the `reglab` binary: the ideal-family text format and
//! the command dispatcher.
//!
//! ```text
//! # Example: two ideals in K[x,y,z]
//! ring x y z
//! I1 = x, y^2, z^3
//! I2 = x^4, y^3, z
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{
    candidate_slopes, check_corollary2, fit_envelope, fmt_value, EnvelopeFit, InvariantGrid,
    InvariantKind,
};
use crate::error::{Error, ParseError, Result};
use crate::hilbert::{compare_series_to_betti, RationalSeriesSum};
use crate::monomial::{IdealFamily, Monomial, MonomialIdeal, MultiExponent, RingContext};
use crate::resolution::multigraded_betti;

pub const DEFAULT_GRID_MAX: u32 = 6;

/// Parses the ideal-family text format. Generator lists are minimalized.
pub fn parse_family(text: &str) -> Result<IdealFamily> {
    let mut ring: Option<RingContext> = None;
    let mut ideals = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(ring) = &ring else {
            ring = Some(parse_ring_line(line, line_no)?);
            continue;
        };
        ideals.push(parse_ideal_line(ring, line, line_no)?);
    }
    let ring = ring.ok_or_else(|| ParseError::new(1, 1, "missing `ring` line"))?;
    if ideals.is_empty() {
        return Err(ParseError::new(text.lines().count().max(1), 1, "no ideals given").into());
    }
    IdealFamily::new(ring, ideals)
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn parse_ring_line(line: &str, line_no: usize) -> Result<RingContext> {
    let words = words_with_offsets(line);
    let Some((&(start, "ring"), names)) = words.split_first() else {
        let col = words.first().map_or(1, |w| column_of(line, w.0));
        return Err(
            ParseError::new(line_no, col, "expected `ring` followed by variable names").into(),
        );
    };
    if names.is_empty() {
        return Err(ParseError::new(
            line_no,
            column_of(line, start),
            "ring needs at least one variable",
        )
        .into());
    }
    let mut vars: Vec<&str> = Vec::new();
    for &(byte, word) in names {
        let mut chars = word.chars();
        if !(chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)) {
            return Err(ParseError::new(
                line_no,
                column_of(line, byte),
                format!("invalid variable name {word}"),
            )
            .into());
        }
        if vars.contains(&word) {
            return Err(ParseError::new(
                line_no,
                column_of(line, byte),
                format!("duplicate variable {word}"),
            )
            .into());
        }
        vars.push(word);
    }
    RingContext::new(vars)
}

fn words_with_offsets(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

fn parse_ideal_line(ring: &RingContext, line: &str, line_no: usize) -> Result<MonomialIdeal> {
    let Some(eq) = line.find('=') else {
        return Err(ParseError::new(line_no, 1, "expected `name = generators`").into());
    };
    let label = line[..eq].trim();
    let mut chars = label.chars();
    if !(chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char)) {
        return Err(ParseError::new(line_no, 1, format!("invalid ideal name `{label}`")).into());
    }
    let body = &line[eq + 1..];
    if body.trim().is_empty() {
        return Err(ParseError::new(
            line_no,
            column_of(line, eq + 1),
            "zero ideal: no generators given",
        )
        .into());
    }
    let mut gens = Vec::new();
    let mut piece_start = eq + 1;
    for piece in body.split(',') {
        gens.push(parse_monomial(ring, line, piece_start, piece, line_no)?);
        piece_start += piece.len() + 1;
    }
    MonomialIdeal::minimalize(ring, gens)
}

fn parse_monomial(
    ring: &RingContext,
    line: &str,
    base: usize,
    text: &str,
    line_no: usize,
) -> Result<Monomial> {
    let err = |byte: usize, msg: String| -> Error {
        ParseError::new(line_no, column_of(line, base + byte), msg).into()
    };
    let mut exps = vec![0u32; ring.n()];
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    let skip_ws = |k: &mut usize| {
        while *k < bytes.len() && bytes[*k].1.is_whitespace() {
            *k += 1;
        }
    };
    skip_ws(&mut k);
    if k == bytes.len() {
        return Err(err(text.len(), "empty generator".into()));
    }
    if bytes[k].1 == '1' {
        let at = bytes[k].0;
        k += 1;
        skip_ws(&mut k);
        if k != bytes.len() {
            return Err(err(at, "unexpected text after `1`".into()));
        }
        return Ok(Monomial::new(exps));
    }
    while k < bytes.len() {
        let (at, c) = bytes[k];
        if !is_ident_start(c) {
            return Err(err(at, format!("unexpected '{c}'")));
        }
        let rest = &text[at..];
        let matched = ring
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        let Some((var, name)) = matched else {
            let ident: String = rest.chars().take_while(|&c| is_ident_char(c)).collect();
            return Err(err(at, format!("unknown variable {ident}")));
        };
        k += name.chars().count();
        skip_ws(&mut k);
        let mut e: u32 = 1;
        if k < bytes.len() && bytes[k].1 == '^' {
            k += 1;
            skip_ws(&mut k);
            let num_start = k;
            while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                k += 1;
            }
            if num_start == k {
                let at = bytes.get(k).map_or(text.len(), |b| b.0);
                return Err(err(at, "expected exponent after '^'".into()));
            }
            let digits: String = bytes[num_start..k].iter().map(|b| b.1).collect();
            e = digits.parse().map_err(|_| {
                err(
                    bytes[num_start].0,
                    format!("exponent {digits} out of range"),
                )
            })?;
            skip_ws(&mut k);
        }
        exps[var] = exps[var]
            .checked_add(e)
            .ok_or_else(|| err(at, "exponent overflow".into()))?;
    }
    Ok(Monomial::new(exps))
}

/// Parses `1,2,3` into a multi-exponent.
pub fn parse_exponent(text: &str) -> Result<MultiExponent> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("invalid exponent list `{text}`")))
        })
        .collect::<Result<Vec<_>>>()
        .map(MultiExponent::new)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gens,
    Betti,
    Table,
    Fit,
    Pd,
    HilbertCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    T,
    Reg,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub command: Command,
    pub grid_max: u32,
    /// Defaults to `(1, …, 1)`.
    pub origin: Option<MultiExponent>,
    pub j: Option<usize>,
    pub kind: KindArg,
    pub output: OutputFormat,
    pub series_path: Option<PathBuf>,
    pub exp: Option<MultiExponent>,
}

impl RunConfig {
    pub fn new(input_path: impl Into<PathBuf>, command: Command) -> Self {
        Self {
            input_path: input_path.into(),
            command,
            grid_max: DEFAULT_GRID_MAX,
            origin: None,
            j: None,
            kind: KindArg::Reg,
            output: OutputFormat::Text,
            series_path: None,
            exp: None,
        }
    }

    fn invariant_kind(&self) -> Result<InvariantKind> {
        match self.kind {
            KindArg::Reg => Ok(InvariantKind::Reg),
            KindArg::T => self
                .j
                .map(|j| InvariantKind::T { j })
                .ok_or_else(|| usage("--kind t needs --j")),
        }
    }
}

fn usage(msg: &str) -> Error {
    Error::Usage(msg.into())
}

/// Exit status and everything the command prints on stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { status: 0, output }
    }

    fn failed(output: String) -> Self {
        Self { status: 1, output }
    }
}

#[derive(Serialize)]
struct JsonReport<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

/// Reads the input files and runs one command. `Err` means bad input (exit status 2).
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let text = std::fs::read_to_string(&config.input_path)?;
    let family = parse_family(&text)?;
    let series = match &config.series_path {
        Some(p) => Some(std::fs::read_to_string(p)?.parse::<RationalSeriesSum>()?),
        None => None,
    };
    run_on(config, &family, series.as_ref())
}

/// Like [`run`] with the inputs already parsed.
pub fn run_on(
    config: &RunConfig,
    family: &IdealFamily,
    series: Option<&RationalSeriesSum>,
) -> Result<Outcome> {
    if config.grid_max < 1 {
        return Err(Error::GridTooSmall {
            min: 1,
            found: config.grid_max,
        });
    }
    let m = family.m();
    let mut config = config.clone();
    if config.origin.is_none() {
        config.origin = Some(MultiExponent::ones(m));
    }
    let json = |body: serde_json::Value| -> Result<String> {
        let mut s = serde_json::to_string_pretty(&JsonReport {
            config: &config,
            body,
        })?;
        s.push('\n');
        Ok(s)
    };

    match config.command {
        Command::Gens => {
            let a = config
                .exp
                .clone()
                .ok_or_else(|| usage("gens needs --exp"))?;
            let ideal = family.power_product(&a)?;
            let out = match config.output {
                OutputFormat::Text => {
                    let max = ideal.degrees().into_iter().max().unwrap_or(0);
                    format!(
                        "I^{a} = {}\n{} minimal generators, max degree {max}\n",
                        ideal.display(),
                        ideal.gens().len()
                    )
                }
                OutputFormat::Json => json(serde_json::json!({ "a": a, "gens": ideal.gens() }))?,
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(family.ring().names())?;
                    for g in ideal.gens() {
                        w.write_record(g.exponents().iter().map(u32::to_string))?;
                    }
                    csv_string(w)?
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Betti => {
            let a = config
                .exp
                .clone()
                .ok_or_else(|| usage("betti needs --exp"))?;
            let ideal = family.power_product(&a)?;
            let table = multigraded_betti(&ideal);
            let out = match config.output {
                OutputFormat::Text => {
                    let mut s = format!("Betti numbers of I^{a} = {}\n", ideal.display());
                    for e in &table.entries {
                        writeln!(
                            s,
                            "  beta_{{{},{}}} = {}",
                            e.j,
                            e.b.display(family.ring()),
                            e.dim
                        )
                        .unwrap();
                    }
                    let t: Vec<String> = table.t.iter().map(i64::to_string).collect();
                    writeln!(
                        s,
                        "t = [{}], pd = {}, reg = {}",
                        t.join(", "),
                        table.pd,
                        table.reg
                    )
                    .unwrap();
                    s
                }
                OutputFormat::Json => json(serde_json::json!({ "a": a, "betti": table }))?,
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let mut header = vec!["j".to_string()];
                    header.extend(family.ring().names().iter().cloned());
                    header.push("dim".into());
                    w.write_record(&header)?;
                    for e in &table.entries {
                        let mut rec = vec![e.j.to_string()];
                        rec.extend(e.b.exponents().iter().map(u32::to_string));
                        rec.push(e.dim.to_string());
                        w.write_record(&rec)?;
                    }
                    csv_string(w)?
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Table => {
            let kind = config.invariant_kind()?;
            let table = InvariantGrid::compute(family, config.grid_max)?.table(kind);
            let out = match config.output {
                OutputFormat::Text => {
                    let mut s = format!("{kind}(I^a) on [0,{}]^{m}\n", config.grid_max);
                    for cell in &table.cells {
                        writeln!(s, "  a={} {}", cell.a, fmt_value(cell.value)).unwrap();
                    }
                    s
                }
                OutputFormat::Json => json(serde_json::json!({ "table": table }))?,
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("csv is utf-8")
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Fit => {
            let kind = config.invariant_kind()?;
            let origin = config.origin.clone().unwrap();
            let table = InvariantGrid::compute(family, config.grid_max)?.table(kind);
            match fit_envelope(&table, &candidate_slopes(family), &origin) {
                Ok(fit) => {
                    let corollary = check_corollary2(family, &fit);
                    let out = match config.output {
                        OutputFormat::Text => {
                            let note = match (family.single_degrees().is_some(), corollary) {
                                (false, _) => "single-degree check: not applicable",
                                (true, true) => "single-degree check: passed",
                                (true, false) => "single-degree check: FAILED",
                            };
                            format!("{fit}\n{note}\n")
                        }
                        OutputFormat::Json => {
                            json(serde_json::json!({ "fit": fit, "single_degree_check": corollary }))?
                        }
                        OutputFormat::Csv => fit_csv(&fit)?,
                    };
                    Ok(if corollary {
                        Outcome::ok(out)
                    } else {
                        Outcome::failed(out)
                    })
                }
                Err(Error::FitFailed {
                    witness,
                    table,
                    envelope,
                }) => {
                    let retry: Vec<String> = origin
                        .as_slice()
                        .iter()
                        .map(|b| (b + 1).to_string())
                        .collect();
                    let msg = format!(
                        "fit failed at a={witness}: {kind} = {table}, envelope = {envelope}\n\
                         the table may not have stabilized yet; retry with --origin {}\n",
                        retry.join(",")
                    );
                    Ok(match config.output {
                        OutputFormat::Json => Outcome::failed(json(serde_json::json!({
                            "error": "fit_failed",
                            "witness": witness,
                            "table": table,
                            "envelope": envelope,
                        }))?),
                        _ => Outcome::failed(msg),
                    })
                }
                Err(e) => Err(e),
            }
        }
        Command::Pd => {
            if config.grid_max < 2 {
                return Err(Error::GridTooSmall {
                    min: 2,
                    found: config.grid_max,
                });
            }
            let grid = InvariantGrid::compute(family, config.grid_max)?;
            match grid.pd_stability() {
                Ok(st) => {
                    let top = MultiExponent::splat(m, st.grid_max);
                    let out = match config.output {
                        OutputFormat::Text => {
                            format!("pd(I^a) = {} on {}..{}\n", st.p, st.origin, top)
                        }
                        OutputFormat::Json => json(serde_json::json!({ "pd": st }))?,
                        OutputFormat::Csv => {
                            let mut w = csv::Writer::from_writer(Vec::new());
                            let mut header = vec!["p".to_string()];
                            header.extend((1..=m).map(|i| format!("b{i}")));
                            w.write_record(&header)?;
                            let mut rec = vec![st.p.to_string()];
                            rec.extend(st.origin.as_slice().iter().map(u32::to_string));
                            w.write_record(&rec)?;
                            csv_string(w)?
                        }
                    };
                    Ok(Outcome::ok(out))
                }
                Err(e @ Error::NotStabilized { .. }) => Ok(Outcome::failed(format!("{e}\n"))),
                Err(e) => Err(e),
            }
        }
        Command::HilbertCheck => {
            let series = series.ok_or_else(|| usage("hilbert-check needs --series"))?;
            let j = config.j.unwrap_or(0);
            let report = compare_series_to_betti(series, family, j, config.grid_max)?;
            let out = match config.output {
                OutputFormat::Text => report.to_string(),
                OutputFormat::Json => json(serde_json::json!({ "report": report }))?,
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let mut header: Vec<String> = (1..=m).map(|i| format!("a{i}")).collect();
                    header.extend(["u".into(), "betti".into(), "series".into()]);
                    w.write_record(&header)?;
                    for mm in &report.mismatches {
                        let keys: std::collections::BTreeSet<i64> =
                            mm.betti.keys().chain(mm.series.keys()).copied().collect();
                        for u in keys {
                            let mut rec: Vec<String> =
                                mm.a.as_slice().iter().map(u32::to_string).collect();
                            rec.push(u.to_string());
                            rec.push(mm.betti.get(&u).copied().unwrap_or(0).to_string());
                            rec.push(mm.series.get(&u).copied().unwrap_or(0).to_string());
                            w.write_record(&rec)?;
                        }
                    }
                    csv_string(w)?
                }
            };
            Ok(if report.passed() {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            })
        }
    }
}

fn fit_csv(fit: &EnvelopeFit) -> Result<String> {
    let m = fit.region_origin.len();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=m).map(|i| format!("slope{i}")).collect();
    header.push("intercept".into());
    w.write_record(&header)?;
    for f in &fit.forms {
        let mut rec: Vec<String> = f.slopes.iter().map(i64::to_string).collect();
        rec.push(f.intercept.to_string());
        w.write_record(&rec)?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}
