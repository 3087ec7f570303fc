//! `zmut`: command-line front end for zmut-core.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zmut_core::cluster::{check_two_curve, multiplicity_sequence, z_prime_numbers, TwoCurveReport};
use zmut_core::mutation::{
    decide_zero_mutable, enumerate_zero_mutable, inverse_datum, is_mutable, mutate,
    necessary_conditions, rigid_test, s_minus, seed_tilde, tangent_table, CertFactor,
    MutationDatum, Provenance, SearchBounds, Seed, Verdict, ZeroMutableCertificate,
};
use zmut_core::toric::{
    cayley_cone, character, cone_over, dual_cone, hilbert_basis, nakajima_equations,
    toric_relations, BinomialIdeal, HilbertBasis, Vec3,
};
use zmut_core::{
    canonical_form, convex_hull, minkowski_decompositions, nakajima_polygon,
    smoothing_decompositions, AffineFunctional, DecompositionFilter, LatticePolygon, LatticeVector,
    LaurentPoly, MinkowskiDecomposition,
};

#[derive(Parser)]
#[command(
    name = "zmut",
    version,
    about = "Zero-mutable Laurent polynomials on lattice polygons"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Search bound overrides, e.g. `max_depth=20,node_cap=5000`.
    #[arg(long, global = true)]
    bounds: Option<String>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice polygon geometry.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Laurent polynomial utilities.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Apply a mutation `(phi, h)`.
    Mutate(MutateArgs),
    /// Mutability and 0-mutability checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// All 0-mutable polynomials with a given Newton polygon.
    Enumerate(PolygonArg),
    /// Seeds of a 0-mutable polynomial.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Predicted tangent dimensions by character.
    Tangent(TangentArgs),
    /// Cones, Hilbert bases and binomial equations.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Intersection numbers on the cluster surface.
    #[command(subcommand)]
    Cluster(ClusterCmd),
}

#[derive(Args)]
struct PolygonArg {
    /// Inline `x,y;x,y;...`, JSON, `@file` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    polygon: String,
}

#[derive(Args)]
struct PolyArg {
    /// Expression, JSON, `@file` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
struct DatumArgs {
    /// Affine functional `a,b,c`.
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
    /// Binomial power `(1+x^e)^k`.
    #[arg(long, allow_hyphen_values = true)]
    h: String,
}

#[derive(Args)]
struct Abc {
    a: i64,
    b: i64,
    c: i64,
}

#[derive(Subcommand)]
enum PolygonCmd {
    /// Convex hull of a point set.
    Hull(PolygonArg),
    /// Lattice points.
    Points(PolygonArg),
    /// Edges with direction, length and inner normal.
    Edges(PolygonArg),
    /// Twice the area.
    Area(PolygonArg),
    /// Normal form under affine unimodular maps.
    Canon(PolygonArg),
    /// Minkowski decompositions.
    Minkowski {
        #[command(flatten)]
        input: PolygonArg,
        /// Include non-maximal decompositions.
        #[arg(long)]
        all: bool,
    },
    /// Decompositions into unit segments and standard triangles.
    SmoothingDec(PolygonArg),
    /// The Nakajima polygon F_{a,b,c}.
    Nakajima(Abc),
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Parse and print as JSON.
    Parse(PolyArg),
    /// Parse and print canonically.
    Print(PolyArg),
    /// Newton polygon.
    Newton(PolyArg),
    /// Restriction to a face of the Newton polygon.
    Restrict {
        #[command(flatten)]
        input: PolyArg,
        /// The face, as a polygon.
        #[arg(long, allow_hyphen_values = true)]
        face: String,
    },
    /// Level sets of an affine functional.
    Slices {
        #[command(flatten)]
        input: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
}

#[derive(Args)]
struct MutateArgs {
    #[command(flatten)]
    input: PolyArg,
    #[command(flatten)]
    datum: DatumArgs,
    /// Apply the inverse datum `(-phi, h)`.
    #[arg(long)]
    inverse: bool,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Integrality, non-negativity, vertex and boundary conditions.
    Necessary(PolyArg),
    /// Whether a datum applies.
    Mutable {
        #[command(flatten)]
        input: PolyArg,
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Decide 0-mutability and print a certificate.
    ZeroMutable(PolyArg),
    /// Whether the polynomial is rigid maximally mutable.
    Rigid(PolyArg),
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    input: PolyArg,
    /// Certificate JSON; computed when absent.
    #[arg(long)]
    cert: Option<String>,
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Edge-negative data.
    SMinus(CertArgs),
    /// Edge-negative data and the factor entries.
    Tilde(CertArgs),
}

#[derive(Args)]
struct TangentArgs {
    #[command(flatten)]
    cert: CertArgs,
    /// Characters to report, `a,b,c;a,b,c`; all nonzero entries when absent.
    #[arg(long, allow_hyphen_values = true)]
    chars: Option<String>,
    /// Report `-k·u` and `-m^1_{p,q}`, `-m^2_{p,q}` for the pairs `p,q;p,q`.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Cone over the polygon at height 1.
    Cone(PolygonArg),
    /// Dual cone rays and Gorenstein degree.
    Dual(PolygonArg),
    /// Hilbert basis of the dual cone.
    Hilbert(PolygonArg),
    /// Binomial relations among the Hilbert basis.
    Ideal {
        #[command(flatten)]
        input: PolygonArg,
        #[arg(long, default_value_t = 4)]
        degree_bound: u32,
    },
    /// The two equations of V_{a,b,c}.
    NakajimaEq(Abc),
    /// Cone over the Cayley polytope of a two-summand decomposition.
    Cayley(PolygonArg),
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Multiplicity sequence over each edge.
    Mults(PolyArg),
    /// Z'^2 and Z'.B.
    Numbers(PolyArg),
    /// Check every factor is a -2-curve.
    Check(CertArgs),
}

enum Fail {
    Usage(String),
    Negative,
    Unknown,
}

impl From<zmut_core::Error> for Fail {
    fn from(e: zmut_core::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Res = Result<(), Fail>;

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, j: Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&j).unwrap()),
            Format::Text => {
                let t = text();
                print!("{t}");
                if !t.ends_with('\n') {
                    println!();
                }
            }
        }
    }
}

fn read_input(arg: &str) -> Result<String, Fail> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Fail::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    let path = arg
        .strip_prefix('@')
        .or_else(|| std::path::Path::new(arg).is_file().then_some(arg));
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{p}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn ints(s: &str) -> Result<Vec<i64>, Fail> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() || (ch == '-' && cur.is_empty()) {
            cur.push(ch);
        } else if !cur.is_empty() {
            out.push(
                cur.parse()
                    .map_err(|_| Fail::Usage(format!("bad integer {cur:?}")))?,
            );
            cur.clear();
        } else if !(ch.is_whitespace() || ",;()[]".contains(ch)) {
            return Err(Fail::Usage(format!("unexpected {ch:?} in {s:?}")));
        }
    }
    Ok(out)
}

fn parse_points(s: &str) -> Result<Vec<LatticeVector>, Fail> {
    let t = s.trim();
    if t.starts_with('{') {
        let p: LatticePolygon =
            serde_json::from_str(t).map_err(|e| Fail::Usage(format!("polygon JSON: {e}")))?;
        return Ok(p.vertices().to_vec());
    }
    let v = ints(t)?;
    if v.is_empty() || v.len() % 2 != 0 {
        return Err(Fail::Usage(format!("expected coordinate pairs, got {t:?}")));
    }
    Ok(v.chunks(2)
        .map(|c| LatticeVector::new(c[0], c[1]))
        .collect())
}

fn polygon(arg: &str) -> Result<LatticePolygon, Fail> {
    Ok(convex_hull(&parse_points(&read_input(arg)?)?)?)
}

fn poly(arg: &str) -> Result<LaurentPoly, Fail> {
    let s = read_input(arg)?;
    let t = s.trim();
    if t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| Fail::Usage(format!("polynomial JSON: {e}")))
    } else {
        Ok(LaurentPoly::parse(t)?)
    }
}

fn functional(s: &str) -> Result<AffineFunctional, Fail> {
    match ints(s)?[..] {
        [a, b, c] => Ok(AffineFunctional::new(a, b, c)),
        _ => Err(Fail::Usage(format!("expected a,b,c, got {s:?}"))),
    }
}

fn datum(d: &DatumArgs) -> Result<MutationDatum, Fail> {
    Ok(MutationDatum::from_laurent(
        functional(&d.phi)?,
        &poly(&d.h)?,
    )?)
}

fn to_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn vec3(v: Vec3) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

fn poly_text(p: &LatticePolygon) -> String {
    p.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn dec_text(d: &MinkowskiDecomposition) -> String {
    d.summands
        .iter()
        .map(|s| format!("conv{{{}}}", poly_text(s)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn certificate(
    args: &CertArgs,
    f: &LaurentPoly,
    bounds: &SearchBounds,
) -> Result<ZeroMutableCertificate, Fail> {
    match &args.cert {
        Some(c) => {
            let cert: ZeroMutableCertificate = serde_json::from_str(&read_input(c)?)
                .map_err(|e| Fail::Usage(format!("certificate JSON: {e}")))?;
            cert.verify(f)
                .map_err(|e| Fail::Usage(format!("certificate rejected: {e}")))?;
            Ok(cert)
        }
        None => match decide_zero_mutable(f, bounds)? {
            Verdict::Yes(cert) => Ok(cert),
            Verdict::No(reason) => {
                eprintln!("not 0-mutable: {reason}");
                Err(Fail::Negative)
            }
            Verdict::Unknown => {
                eprintln!("undecided within bounds");
                Err(Fail::Unknown)
            }
        },
    }
}

fn cert_text(cert: &ZeroMutableCertificate) -> String {
    let mut s = String::new();
    if cert.shift != LatticeVector::new(0, 0) {
        writeln!(s, "shift {}", cert.shift).unwrap();
    }
    for f in &cert.factors {
        writeln!(s, "factor ({})^{}", f.poly, f.multiplicity).unwrap();
        for d in &f.chain {
            writeln!(s, "  {d}").unwrap();
        }
    }
    s
}

fn run_polygon(cmd: PolygonCmd, out: &Out) -> Res {
    match cmd {
        PolygonCmd::Hull(a) => {
            let p = polygon(&a.polygon)?;
            out.emit(to_json(&p), || poly_text(&p));
        }
        PolygonCmd::Points(a) => {
            let pts = polygon(&a.polygon)?.lattice_points();
            out.emit(to_json(&pts), || {
                pts.iter().map(|v| format!("{v}\n")).collect()
            });
        }
        PolygonCmd::Edges(a) => {
            let edges = polygon(&a.polygon)?.edges()?;
            out.emit(to_json(&edges), || {
                edges
                    .iter()
                    .map(|e| {
                        format!(
                            "{} -> {} length {} normal {} min {}\n",
                            e.start,
                            e.end,
                            e.length,
                            e.normal(),
                            e.min_value
                        )
                    })
                    .collect()
            });
        }
        PolygonCmd::Area(a) => {
            let d = polygon(&a.polygon)?.double_area();
            out.emit(json!({ "double_area": d }), || format!("{d}"));
        }
        PolygonCmd::Canon(a) => {
            let (c, m) = canonical_form(&polygon(&a.polygon)?);
            out.emit(json!({ "polygon": c, "map": m }), || {
                format!("{}\nmap {:?} + {}", poly_text(&c), m.matrix, m.translation)
            });
        }
        PolygonCmd::Minkowski { input, all } => {
            let filter = if all {
                DecompositionFilter::All
            } else {
                DecompositionFilter::Maximal
            };
            let decs = minkowski_decompositions(&polygon(&input.polygon)?, filter);
            out.emit(to_json(&decs), || {
                decs.iter().map(|d| format!("{}\n", dec_text(d))).collect()
            });
        }
        PolygonCmd::SmoothingDec(a) => {
            let decs = smoothing_decompositions(&polygon(&a.polygon)?);
            out.emit(to_json(&decs), || {
                decs.iter().map(|d| format!("{}\n", dec_text(d))).collect()
            });
        }
        PolygonCmd::Nakajima(Abc { a, b, c }) => {
            let p = nakajima_polygon(a, b, c)?;
            out.emit(to_json(&p), || poly_text(&p));
        }
    }
    Ok(())
}

fn run_poly(cmd: PolyCmd, out: &Out) -> Res {
    match cmd {
        PolyCmd::Parse(a) => {
            let f = poly(&a.poly)?;
            println!("{}", serde_json::to_string_pretty(&f).unwrap());
        }
        PolyCmd::Print(a) => {
            let f = poly(&a.poly)?;
            out.emit(json!(f.to_string()), || f.to_string());
        }
        PolyCmd::Newton(a) => {
            let p = poly(&a.poly)?.newton_polygon()?;
            out.emit(to_json(&p), || poly_text(&p));
        }
        PolyCmd::Restrict { input, face } => {
            let g = poly(&input.poly)?.restrict_to_face(&polygon(&face)?)?;
            out.emit(to_json(&g), || g.to_string());
        }
        PolyCmd::Slices { input, phi } => {
            let s = poly(&input.poly)?.slices(&functional(&phi)?);
            let j: Vec<Value> = s
                .iter()
                .map(|(k, p)| json!({ "level": k, "poly": p }))
                .collect();
            out.emit(json!(j), || {
                s.iter().map(|(k, p)| format!("{k}: {p}\n")).collect()
            });
        }
    }
    Ok(())
}

fn run_check(cmd: CheckCmd, out: &Out, bounds: &SearchBounds) -> Res {
    match cmd {
        CheckCmd::Necessary(a) => {
            let r = necessary_conditions(&poly(&a.poly)?);
            out.emit(
                json!({ "passed": r.passed(), "violations": r.violations }),
                || {
                    if r.passed() {
                        "pass".into()
                    } else {
                        r.violations.iter().map(|v| format!("{v}\n")).collect()
                    }
                },
            );
            if !r.passed() {
                return Err(Fail::Negative);
            }
        }
        CheckCmd::Mutable { input, datum: d } => {
            let ok = is_mutable(&poly(&input.poly)?, &datum(&d)?);
            out.emit(json!(ok), || ok.to_string());
            if !ok {
                return Err(Fail::Negative);
            }
        }
        CheckCmd::ZeroMutable(a) => {
            let f = poly(&a.poly)?;
            match decide_zero_mutable(&f, bounds)? {
                Verdict::Yes(cert) => {
                    out.emit(json!({ "verdict": "yes", "certificate": cert }), || {
                        format!("yes\n{}", cert_text(&cert))
                    });
                }
                Verdict::No(reason) => {
                    out.emit(json!({ "verdict": "no", "reason": reason }), || {
                        format!("no: {reason}")
                    });
                    return Err(Fail::Negative);
                }
                Verdict::Unknown => {
                    out.emit(json!({ "verdict": "unknown" }), || "unknown".into());
                    return Err(Fail::Unknown);
                }
            }
        }
        CheckCmd::Rigid(a) => {
            let ok = rigid_test(&poly(&a.poly)?, bounds);
            out.emit(json!(ok), || ok.to_string());
            if !ok {
                return Err(Fail::Negative);
            }
        }
    }
    Ok(())
}

fn seed_text(s: &Seed) -> String {
    s.entries
        .iter()
        .map(|e| format!("{} {}\n", vec3(e.phi_m), e.h))
        .collect()
}

fn run_tangent(args: TangentArgs, out: &Out, bounds: &SearchBounds) -> Res {
    let f = poly(&args.cert.input.poly)?;
    let cert = certificate(&args.cert, &f, bounds)?;
    let table = tangent_table(&cert, &f, bounds);
    let mut chars: Vec<(String, Vec3)> = Vec::new();
    if let Some(g) = &args.grid {
        let v = ints(g)?;
        if v.is_empty() || v.len() % 2 != 0 {
            return Err(Fail::Usage(format!("expected p,q pairs, got {g:?}")));
        }
        let dc = dual_cone(&cone_over(&f.newton_polygon()?)?)?;
        for k in 1..=table.n.len().max(1) as i64 {
            let name = if k == 1 {
                "-u".to_string()
            } else {
                format!("-{k}u")
            };
            chars.push((name, [0, 0, -k]));
        }
        for which in [1u8, 2] {
            for pq in v.chunks(2) {
                let m = character(pq[0], pq[1], which, &dc)?;
                chars.push((
                    format!("-m{which}_{},{}", pq[0], pq[1]),
                    [-m[0], -m[1], -m[2]],
                ));
            }
        }
    }
    if let Some(c) = &args.chars {
        let v = ints(c)?;
        if v.is_empty() || v.len() % 3 != 0 {
            return Err(Fail::Usage(format!("expected a,b,c triples, got {c:?}")));
        }
        chars.extend(
            v.chunks(3)
                .map(|m| (vec3([m[0], m[1], m[2]]), [m[0], m[1], m[2]])),
        );
    }
    if chars.is_empty() {
        out.emit(to_json(&table), || {
            let mut s: String = table
                .entries
                .iter()
                .map(|(m, d)| format!("{} {d}\n", vec3(*m)))
                .collect();
            writeln!(s, "n {:?}", table.n).unwrap();
            s
        });
    } else {
        let rows: Vec<Value> = chars
            .iter()
            .map(|(name, m)| json!({ "name": name, "m": m, "dim": table.dim(*m) }))
            .collect();
        out.emit(json!(rows), || {
            chars
                .iter()
                .map(|(name, m)| format!("{name} {} {}\n", vec3(*m), table.dim(*m)))
                .collect()
        });
    }
    Ok(())
}

const WORKED_BASIS: [(Vec3, &str); 8] = [
    ([0, 0, 1], "u"),
    ([0, 1, 1], "s1"),
    ([-1, 0, 2], "z2"),
    ([-2, -1, 3], "s4"),
    ([-1, -1, 2], "z3"),
    ([-1, -2, 3], "s3"),
    ([0, -1, 2], "z4"),
    ([1, 0, 1], "s2"),
];

fn is_worked_example(hb: &HilbertBasis) -> bool {
    hb.elements.len() == 8 && WORKED_BASIS.iter().all(|(v, _)| hb.elements.contains(v))
}

fn worked_names(hb: &HilbertBasis) -> Vec<String> {
    hb.elements
        .iter()
        .map(|v| {
            WORKED_BASIS
                .iter()
                .find(|(w, _)| w == v)
                .map(|(_, n)| n.to_string())
                .unwrap_or_else(|| vec3(*v))
        })
        .collect()
}

fn rolling_factors() -> String {
    let row = |r: [&str; 5]| {
        r.iter()
            .map(|n| format!("{:<6}", format!("x_{n}")))
            .collect::<String>()
    };
    format!(
        "rank [ {}]\n     [ {}] <= 1\n",
        row(["s1", "z2", "u", "s2", "z4"]),
        row(["z2", "s4", "z3", "z4", "s3"])
    )
}

fn ideal_text(ideal: &BinomialIdeal) -> String {
    ideal
        .generators
        .iter()
        .map(|b| format!("{}\n", ideal.format_binomial(b)))
        .collect()
}

fn run_toric(cmd: ToricCmd, out: &Out) -> Res {
    match cmd {
        ToricCmd::Cone(a) => {
            let c = cone_over(&polygon(&a.polygon)?)?;
            out.emit(to_json(&c), || {
                c.rays.iter().map(|r| format!("{}\n", vec3(*r))).collect()
            });
        }
        ToricCmd::Dual(a) => {
            let dc = dual_cone(&cone_over(&polygon(&a.polygon)?)?)?;
            out.emit(to_json(&dc), || {
                let mut s: String = dc
                    .rays
                    .iter()
                    .enumerate()
                    .map(|(j, r)| format!("s{} {}\n", j + 1, vec3(*r)))
                    .collect();
                writeln!(s, "u {}", vec3(dc.gorenstein_degree)).unwrap();
                s
            });
        }
        ToricCmd::Hilbert(a) => {
            let dc = dual_cone(&cone_over(&polygon(&a.polygon)?)?)?;
            let mut hb = hilbert_basis(&dc);
            let worked = is_worked_example(&hb);
            if worked {
                hb.names = worked_names(&hb);
            }
            out.emit(to_json(&hb), || {
                let mut s: String = hb
                    .elements
                    .iter()
                    .zip(&hb.names)
                    .map(|(v, n)| format!("{n} {}\n", vec3(*v)))
                    .collect();
                if worked {
                    s.push_str(
                        "note: s3 = (-1,-2,3); (-1,2,3) would be negative on the ray (2,-1,1)\n",
                    );
                }
                s
            });
        }
        ToricCmd::Ideal {
            input,
            degree_bound,
        } => {
            let dc = dual_cone(&cone_over(&polygon(&input.polygon)?)?)?;
            let mut hb = hilbert_basis(&dc);
            let worked = is_worked_example(&hb);
            if worked {
                hb.names = worked_names(&hb);
            }
            let ideal = toric_relations(&hb, degree_bound)?;
            out.emit(to_json(&ideal), || {
                let mut s = ideal_text(&ideal);
                if worked {
                    s.push_str(&rolling_factors());
                }
                s
            });
        }
        ToricCmd::NakajimaEq(Abc { a, b, c }) => {
            let ideal = nakajima_equations(a, b, c)?;
            out.emit(to_json(&ideal), || ideal_text(&ideal));
        }
        ToricCmd::Cayley(a) => {
            let p = polygon(&a.polygon)?;
            let dec = minkowski_decompositions(&p, DecompositionFilter::All)
                .into_iter()
                .find(|d| d.len() == 2)
                .ok_or_else(|| Fail::Usage("no two-summand Minkowski decomposition".into()))?;
            let cc = cayley_cone(&dec.aligned_to(&p))?;
            out.emit(
                json!({ "decomposition": dec.aligned_to(&p), "rays": cc.rays }),
                || {
                    cc.rays
                        .iter()
                        .map(|r| format!("({},{},{},{})\n", r[0], r[1], r[2], r[3]))
                        .collect()
                },
            );
        }
    }
    Ok(())
}

fn two_curve_text(r: &TwoCurveReport) -> String {
    let mut s = String::new();
    for f in &r.factors {
        match &f.numbers {
            Some(z) => writeln!(
                s,
                "{} Z'^2={} Z'.B={} {}",
                f.poly,
                z.self_intersection,
                z.boundary_product,
                if f.pass { "pass" } else { "FAIL" }
            ),
            None => writeln!(s, "{} (segment, not judged)", f.poly),
        }
        .unwrap();
    }
    s.push_str(if r.pass { "pass" } else { "fail" });
    s
}

fn run_cluster(cmd: ClusterCmd, out: &Out, bounds: &SearchBounds) -> Res {
    match cmd {
        ClusterCmd::Mults(a) => {
            let f = poly(&a.poly)?;
            let edges = f.newton_polygon()?.edges()?;
            let mut rows = Vec::new();
            for e in &edges {
                rows.push((e, multiplicity_sequence(&f, e)?));
            }
            let j: Vec<Value> = rows
                .iter()
                .map(|(e, m)| json!({ "edge": e, "mults": m }))
                .collect();
            out.emit(json!(j), || {
                rows.iter()
                    .map(|(e, m)| format!("{} -> {} {:?}\n", e.start, e.end, m))
                    .collect()
            });
        }
        ClusterCmd::Numbers(a) => {
            let z = z_prime_numbers(&poly(&a.poly)?)?;
            out.emit(to_json(&z), || {
                format!("Z'^2 {}\nZ'.B {}", z.self_intersection, z.boundary_product)
            });
        }
        ClusterCmd::Check(args) => {
            let f = poly(&args.input.poly)?;
            let cert = match certificate(&args, &f, bounds) {
                Ok(c) => c,
                Err(Fail::Negative) | Err(Fail::Unknown) => {
                    let (g, shift) = f.normalized();
                    ZeroMutableCertificate {
                        factors: vec![CertFactor {
                            poly: g,
                            multiplicity: 1,
                            chain: Vec::new(),
                        }],
                        shift,
                        provenance: Provenance::UserSupplied,
                    }
                }
                Err(e) => return Err(e),
            };
            let r = check_two_curve(&cert);
            out.emit(to_json(&r), || two_curve_text(&r));
            if !r.pass {
                return Err(Fail::Negative);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    let mut bounds = SearchBounds::default();
    if let Some(b) = &cli.bounds {
        bounds = bounds.with_overrides(b)?;
    }
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fail::Usage(e.to_string()))?;
    }
    let out = Out { format: cli.format };
    match cli.cmd {
        Cmd::Polygon(c) => run_polygon(c, &out),
        Cmd::Poly(c) => run_poly(c, &out),
        Cmd::Mutate(a) => {
            let f = poly(&a.input.poly)?;
            let mut d = datum(&a.datum)?;
            if a.inverse {
                d = inverse_datum(&d);
            }
            match mutate(&f, &d) {
                Ok(g) => {
                    out.emit(to_json(&g), || g.to_string());
                    Ok(())
                }
                Err(e @ zmut_core::Error::NotMutable { .. }) => {
                    eprintln!("{e}");
                    Err(Fail::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Check(c) => run_check(c, &out, &bounds),
        Cmd::Enumerate(a) => {
            let e = enumerate_zero_mutable(&polygon(&a.polygon)?, &bounds);
            out.emit(
                json!({
                    "polys": e.polys.iter().map(|(p, c)| json!({ "poly": p, "certificate": c })).collect::<Vec<_>>(),
                    "unverified": e.unverified,
                }),
                || {
                    let mut s: String = e.polys.iter().map(|(p, _)| format!("{p}\n")).collect();
                    for u in &e.unverified {
                        writeln!(s, "unverified {u}").unwrap();
                    }
                    s
                },
            );
            if e.unverified.is_empty() {
                Ok(())
            } else {
                Err(Fail::Unknown)
            }
        }
        Cmd::Seed(c) => {
            let (args, tilde) = match c {
                SeedCmd::SMinus(a) => (a, false),
                SeedCmd::Tilde(a) => (a, true),
            };
            let f = poly(&args.input.poly)?;
            let cert = certificate(&args, &f, &bounds)?;
            let s = if tilde {
                seed_tilde(&cert, &f, &bounds)
            } else {
                s_minus(&cert, &f, &bounds)
            };
            out.emit(to_json(&s), || seed_text(&s));
            Ok(())
        }
        Cmd::Tangent(a) => run_tangent(a, &out, &bounds),
        Cmd::Toric(c) => run_toric(c, &out),
        Cmd::Cluster(c) => run_cluster(c, &out, &bounds),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Negative) => ExitCode::from(1),
        Err(Fail::Unknown) => ExitCode::from(3),
    }
}
