//! `pcr`: Jacobian rings, Hodge cycles from periods, ideal reconstruction,
//! symbolic verification and apolarity experiments.
//!
//! Exit codes: 0 success or verified, 1 computational failure or malformed
//! input, 2 verification refuted.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use pcr_core::apolarity::twisted_cubic_experiment;
use pcr_core::bigfloat::{format_real, ComplexField};
use pcr_core::hodgeclass::{enumerate_candidates, kind_counts, HodgeLattice};
use pcr_core::jacring::Certificate;
use pcr_core::lattice::{min_poly, minkowski_bound};
use pcr_core::numfield::NumberField;
use pcr_core::periods::{functional_from_periods, hodge_cycles, random_conic_quartic, synthetic_functional, PeriodData};
use pcr_core::polyring::{parse_poly, parse_rational_poly, GradedPoly, ParseOptions};
use pcr_core::reconstruct::{
    algorithm1, exact_check_containment, ideal_degree_part, lift_to_field, matches_exact, reconstruct_exact,
};
use pcr_core::linalg::RowSpace;
use pcr_core::verify::{ci_membership_check, conic_pair_check, line_check};
use pcr_core::{Error, Field, Hypersurface};

use output::{Mode, Report};

#[derive(Parser)]
#[command(name = "pcr", version, about = "Hodge cycles and subvarieties of hypersurfaces from periods")]
struct Cli {
    /// Working precision in decimal digits (floating-point commands).
    #[arg(long, global = true)]
    digits: Option<usize>,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Text)]
    output: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded pieces of the Jacobian ring and the smoothness check.
    Jring {
        #[arg(long)]
        f: String,
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long)]
        check_smooth: bool,
    },
    /// The Minkowski bound M(n).
    Minkowski { n: u64 },
    /// Minimal polynomial of a numerical value ("x" or "re,im").
    Minpoly {
        #[arg(long)]
        value: String,
        #[arg(long)]
        maxdeg: usize,
    },
    /// Hodge cycles of a period file.
    Hodge {
        #[arg(long)]
        periods: PathBuf,
    },
    /// Candidate classes of lines, conics and twisted cubics.
    Classes {
        #[arg(long)]
        periods: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
    },
    /// Ideal pieces from periods of a cycle, or exactly from a complete intersection.
    Ideal {
        #[arg(long, conflicts_with = "synthetic")]
        periods: Option<PathBuf>,
        /// Integer coordinates "v1,...,vs" of the cycle.
        #[arg(long, requires = "periods")]
        cycle: Option<String>,
        #[arg(long)]
        synthetic: bool,
        #[arg(long)]
        f: Option<String>,
        /// Generators "g0;g1;..." of the complete intersection.
        #[arg(long)]
        ci: Option<String>,
        /// Defining polynomial m(t) of the coefficient field.
        #[arg(long)]
        field: Option<String>,
        /// Degree or comma-separated degrees.
        #[arg(long)]
        degree: String,
        #[arg(long)]
        reconstruct: bool,
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
    },
    /// Symbolic checks over a number field.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(long)]
        f: String,
        #[arg(long)]
        field: Option<String>,
        /// Forms separated by ';': "l1;l2", "h;q" or "g0;g1;...".
        #[arg(long)]
        forms: String,
    },
    /// The twisted-cubic apolarity experiment.
    ApolarExperiment {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// End-to-end exact and floating self-test.
    SynthTest {
        #[arg(long, value_enum)]
        preset: Preset,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Line,
    ConicPair,
    Ci,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    FermatLine,
    Conic,
}

enum Status {
    Ok,
    Refuted,
}

type Outcome = Result<(Report, Status), Error>;

fn field_of(m: &Option<String>) -> Result<NumberField, Error> {
    match m {
        Some(s) => NumberField::parse(s, None),
        None => Ok(NumberField::rationals()),
    }
}

fn field_name(k: &NumberField) -> String {
    if k.degree() == 1 {
        "Q".to_string()
    } else {
        format!("Q[t]/({})", k.modulus_monic().render("t"))
    }
}

fn parse_forms(k: &NumberField, s: &str, nvars: usize) -> Result<Vec<GradedPoly<NumberField>>, Error> {
    let opts = ParseOptions { nvars: Some(nvars), param: (k.degree() > 1).then(|| k.gen()) };
    s.split(';').map(|p| parse_poly(k, p.trim(), &opts)).collect()
}

fn degrees(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad degree `{x}`"))))
        .collect()
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn jring(f: &str, degree: Option<i64>, check_smooth: bool) -> Outcome {
    let x = Hypersurface::new(parse_rational_poly(f, None)?)?;
    let mut r = Report::default();
    r.kv("n", x.n()).kv("d", x.d()).kv("middle_degree", x.middle_degree()).kv("top_degree", x.top_degree());
    let mut status = Status::Ok;
    if let Some(u) = degree {
        let s = x.graded_slice(u)?;
        r.kv("degree", u).kv("dim", s.dim());
        r.kv("standard_monomials", join(s.standard_monomials(), " "));
    }
    if check_smooth || degree.is_none() {
        let h = x.hilbert_check();
        r.kv("dims", join(&h.dims, " ")).kv("expected", join(&h.expected, " "));
        r.kv(
            "certificate",
            match h.certificate {
                Certificate::ModP(p) => format!("mod-p rank, p = {p}"),
                Certificate::Exact => "exact".to_string(),
            },
        );
        r.kv("smooth", h.smooth);
        if check_smooth && !h.smooth {
            status = Status::Refuted;
        }
    }
    Ok((r, status))
}

fn minpoly(value: &str, maxdeg: usize, digits: usize) -> Outcome {
    let cf = ComplexField::with_digits(digits);
    let z = if value.contains(',') { cf.parse(value)? } else { cf.parse(&format!("{value},0"))? };
    let a = min_poly(&z, maxdeg, digits)?;
    let mut r = Report::default();
    r.kv("degree", a.degree()).kv("minpoly", a.render()).kv("coefficients", join(&a.minpoly, " "));
    r.kv("residual", format_real(&a.residual, 6));
    if let Ok(rad) = a.isolation_radius() {
        r.kv("isolation_radius", format!("{rad:.3e}"));
    }
    r.note("minimality of the degree is heuristic: the least-degree relation is returned without factoring");
    Ok((r, Status::Ok))
}

fn hodge(path: &PathBuf) -> Outcome {
    let data = PeriodData::parse_file(path)?;
    let hc = hodge_cycles(&data)?;
    let mut r = Report::default();
    r.kv("s", data.s).kv("digits", data.digits).kv("rank", hc.rank());
    r.kv("picard_rank", hc.rank() + 1);
    for (i, (v, res)) in hc.basis.iter().zip(&hc.residuals).enumerate() {
        r.kv(format!("cycle[{i}]"), join(v, ","));
        r.kv(format!("residual[{i}]"), format_real(res, 6));
    }
    r.note("columns span primitive homology, so the polarisation adds one to the rank");
    Ok((r, Status::Ok))
}

fn classes(path: &PathBuf, max_degree: i64) -> Outcome {
    let data = PeriodData::parse_file(path)?;
    let hc = hodge_cycles(&data)?;
    let lat = HodgeLattice::from_periods(&data, &hc.basis)?;
    let c = enumerate_candidates(&lat, max_degree, -2)?;
    let mut r = Report::default();
    r.kv("rank", lat.rank()).kv("h_square", lat.h_square()).kv("candidates", c.len());
    for (k, n) in kind_counts(&c) {
        r.kv(format!("count[{}]", k.name()), n);
    }
    for (i, x) in c.iter().enumerate() {
        r.kv(
            format!("class[{i}]"),
            format!("degree={} kind={} scale={} coords={}", x.degree, x.kind.name(), x.scale, join(&x.coords, ",")),
        );
    }
    r.note("classes are numerical candidates; integrality of the glue to the polarisation is not checked");
    Ok((r, Status::Ok))
}

#[allow(clippy::too_many_arguments)]
fn ideal(
    periods: &Option<PathBuf>,
    cycle: &Option<String>,
    synthetic: bool,
    f: &Option<String>,
    ci: &Option<String>,
    field: &Option<String>,
    degree: &str,
    reconstruct: bool,
    maxdeg: usize,
) -> Outcome {
    let us = degrees(degree)?;
    let mut r = Report::default();
    if synthetic {
        let f = f.as_ref().ok_or_else(|| Error::Invalid("--synthetic needs --f".into()))?;
        let ci = ci.as_ref().ok_or_else(|| Error::Invalid("--synthetic needs --ci".into()))?;
        let x = Hypersurface::new(parse_rational_poly(f, None)?)?;
        let k = field_of(field)?;
        let gens = parse_forms(&k, ci, x.nvars())?;
        let lam = synthetic_functional(&x, &gens)?.functional;
        r.kv("field", field_name(&k));
        for &u in &us {
            let s = algorithm1(&x, &lam, u)?;
            r.kv(format!("dim[{u}]"), s.dim());
            for (i, p) in s.basis.iter().enumerate() {
                r.kv(format!("basis[{u}][{i}]"), p);
            }
        }
        let rep = exact_check_containment(&x, &lam, &gens, &us)?;
        r.kv("containments_hold", rep.all_hold());
        let status = if rep.all_hold() { Status::Ok } else { Status::Refuted };
        return Ok((r, status));
    }
    let path = periods.as_ref().ok_or_else(|| Error::Invalid("give --periods or --synthetic".into()))?;
    let cycle = cycle.as_ref().ok_or_else(|| Error::Invalid("--periods needs --cycle".into()))?;
    let data = PeriodData::parse_file(path)?;
    let v: Vec<BigInt> = cycle
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad cycle entry `{c}`"))))
        .collect::<Result<_, _>>()?;
    let x = data.hypersurface()?;
    let lam = functional_from_periods(&data, &v)?;
    for &u in &us {
        let s = algorithm1(&x, &lam, u)?;
        r.kv(format!("dim[{u}]"), s.dim());
        if let Some(d) = &s.diagnostics {
            r.kv(format!("pivot_gap[{u}]"), format_real(&d.pivot_gap, 6));
            r.kv(format!("residual[{u}]"), format_real(&d.residual, 6));
        }
        for (i, p) in s.basis.iter().enumerate() {
            r.kv(format!("basis[{u}][{i}]"), p);
        }
        if reconstruct && s.dim() > 0 {
            let rec = reconstruct_exact(&s, maxdeg, data.digits)?;
            r.kv(format!("field[{u}]"), field_name(&rec.field));
            if let Some(g) = &rec.generator {
                r.kv(format!("generator_minpoly[{u}]"), g.render());
            }
            for (i, p) in rec.basis.iter().enumerate() {
                r.kv(format!("exact[{u}][{i}]"), p);
            }
        }
    }
    Ok((r, Status::Ok))
}

fn verify(kind: VerifyKind, f: &str, field: &Option<String>, forms: &str) -> Outcome {
    let k = field_of(field)?;
    let fq = parse_rational_poly(f, None)?;
    let nvars = fq.nvars();
    let fk = fq.map_field(&k, |c| k.from_rational(c));
    let forms = parse_forms(&k, forms, nvars)?;
    let mut r = Report::default();
    r.kv("field", field_name(&k));
    let ok = match kind {
        VerifyKind::Line => {
            if forms.len() != 2 {
                return Err(Error::Invalid("a line needs two linear forms".into()));
            }
            let ok = line_check(&fk, &forms[0], &forms[1])?;
            r.kv("line_contained", ok);
            ok
        }
        VerifyKind::ConicPair => {
            if forms.len() != 2 {
                return Err(Error::Invalid("a conic pair needs a plane and a quadric".into()));
            }
            let rep = conic_pair_check(&fk, &forms[0], &forms[1])?;
            r.kv("split", rep.split).kv("conic_smooth", rep.conic_smooth).kv("partner_smooth", rep.partner_smooth);
            r.kv("singular_scheme_degree", rep.singular_scheme_degree.map_or("none".into(), |d| d.to_string()));
            r.kv("singular_points", rep.singular_points.map_or("none".into(), |d| d.to_string()));
            r.kv("bitangent_pair", rep.is_bitangent_pair());
            if let Some(p) = rep.partner_lifted(nvars) {
                r.kv("partner", p);
            }
            rep.split
        }
        VerifyKind::Ci => {
            let h = ci_membership_check(&fk, &forms)?;
            r.kv("in_ideal", h.is_some());
            if let Some(h) = &h {
                for (i, c) in h.iter().enumerate() {
                    r.kv(format!("cofactor[{i}]"), c);
                }
            }
            h.is_some()
        }
    };
    r.kv("verified", ok);
    Ok((r, if ok { Status::Ok } else { Status::Refuted }))
}

fn apolar(trials: u64, degree: u32, seed: u64) -> Outcome {
    let rep = twisted_cubic_experiment(degree, trials, seed)?;
    let mut r = Report::default();
    r.kv("degree", rep.degree).kv("trials", rep.trials).kv("seed", rep.seed);
    r.kv("codim_one", rep.codim_one);
    for (d, n) in &rep.dim_perp2 {
        r.kv(format!("dim_perp2[{d}]"), n);
    }
    r.kv("perp1_zero", rep.perp1_zero).kv("contains_it2", rep.contains_it2).kv("equals_it2", rep.equals_it2);
    r.kv("socle_ok", rep.socle_ok).kv("resamples", rep.resamples);
    for (t, a) in &rep.anomalies {
        r.kv(format!("anomaly[{t}]"), a);
    }
    let ok = rep.anomalies.is_empty() && rep.dim_perp2.keys().all(|&d| d == 3);
    Ok((r, if ok { Status::Ok } else { Status::Refuted }))
}

fn synth_test(preset: Preset, digits: usize, seed: u64) -> Outcome {
    let mut r = Report::default();
    let mut ok = true;
    let (x, lam, exact_gens, expected): (Hypersurface, _, _, Vec<usize>) = match preset {
        Preset::FermatLine => {
            let x = Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None)?)?;
            let k = NumberField::parse("t^4+1", None)?;
            let gens = parse_forms(&k, "x0 - t*x1; x2 - t*x3", 4)?;
            let lam = synthetic_functional(&x, &gens)?.functional;
            (x, lam, gens, vec![2, 7])
        }
        Preset::Conic => {
            let (x, gens, _) = random_conic_quartic(seed)?;
            let q = NumberField::rationals();
            let lam = lift_to_field(&synthetic_functional(&x, &gens)?.functional, &q);
            let gens = gens.iter().map(|g| g.map_field(&q, |c| q.from_rational(c))).collect();
            r.kv("f", x.f());
            (x, lam, gens, vec![1, 6])
        }
    };
    let k = lam.field.clone();
    let flt = lam.embed(digits)?;
    for (u, want) in (1..=2i64).zip(expected) {
        let exact = algorithm1(&x, &lam, u)?;
        r.kv(format!("exact_dim[{u}]"), exact.dim());
        ok &= exact.dim() == want;
        if u == 1 {
            let ideal = RowSpace::new(&k, &ideal_degree_part(&exact_gens, 1, 4, &k), 4);
            let got = RowSpace::new(&k, &exact.coefficient_rows(), 4);
            let contains = got.contains_space(&k, &ideal);
            r.kv("linear_part_contains_ideal", contains);
            ok &= contains;
        }
        let fs = algorithm1(&x, &flt, u)?;
        r.kv(format!("float_dim[{u}]"), fs.dim());
        ok &= fs.dim() == exact.dim();
        match reconstruct_exact(&fs, 8, digits) {
            Ok(rec) => {
                let same = matches_exact(&rec, &exact);
                r.kv(format!("reconstructed[{u}]"), same);
                ok &= same;
            }
            Err(e) => {
                r.kv(format!("reconstructed[{u}]"), format!("error: {e}"));
                ok = false;
            }
        }
    }
    let rep = exact_check_containment(&x, &lam, &exact_gens, &[1, 2, 3, 4])?;
    r.kv("containments_hold", rep.all_hold());
    ok &= rep.all_hold();
    r.kv("result", if ok { "PASS" } else { "FAIL" });
    Ok((r, if ok { Status::Ok } else { Status::Refuted }))
}

fn run(cli: &Cli) -> Outcome {
    let digits = cli.digits.unwrap_or(100);
    match &cli.command {
        Command::Jring { f, degree, check_smooth } => jring(f, *degree, *check_smooth),
        Command::Minkowski { n } => {
            let mut r = Report::default();
            r.kv("n", n).kv("M", minkowski_bound(*n));
            Ok((r, Status::Ok))
        }
        Command::Minpoly { value, maxdeg } => minpoly(value, *maxdeg, digits),
        Command::Hodge { periods } => hodge(periods),
        Command::Classes { periods, max_degree } => classes(periods, *max_degree),
        Command::Ideal { periods, cycle, synthetic, f, ci, field, degree, reconstruct, maxdeg } => {
            ideal(periods, cycle, *synthetic, f, ci, field, degree, *reconstruct, *maxdeg)
        }
        Command::Verify { kind, f, field, forms } => verify(*kind, f, field, forms),
        Command::ApolarExperiment { trials, degree } => apolar(*trials, *degree, cli.seed),
        Command::SynthTest { preset } => synth_test(*preset, digits, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((report, status)) => {
            print!("{}", report.render(cli.output));
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Refuted => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
