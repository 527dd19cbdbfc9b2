use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use foldtree::catalog::{parse_q, read_catalog, read_polygon, validate_catalog, write_catalog, CatalogError};
use foldtree::cone::{distinct_unfoldings, parse_bits, unfold, validate_cut_tree, volcano_cut_tree, ConeError, Frustum};
use foldtree::enumerate::{
    enumerate_edge_to_edge, enumerate_gluings, perimeter_halving, star_contraction_family, EnumerateOptions,
};
use foldtree::gluing::{check_aleksandrov, quotient_by_symmetry, structural_check, to_dot, GluingTree, Shape};
use foldtree::polygon::{
    equilateral_triangle, latin_cross, m_star, rectangle, regular_ngon, symmetry_group, unfoldable_witness,
    unit_square, PolygonError, PolygonSpec,
};
use foldtree::Q;

#[derive(Parser)]
#[command(name = "foldtree", version, about = "Gluing trees of polygons and cut-tree unfoldings of truncated cones")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Enumerate every gluing tree of a polygon.
    Enumerate(EnumerateArgs),
    /// Re-check a stored catalog against its polygon.
    Validate(ValidateArgs),
    /// Unfold a truncated cone along volcano cut trees.
    UnfoldCone(ConeArgs),
    /// Glue the boundary to itself by halving the perimeter from an offset.
    PerimeterHalve(HalveArgs),
    /// Contraction gluings of the m-star.
    StarFamily(StarArgs),
    /// Gluings that match whole edges only.
    EdgeToEdge(E2eArgs),
    /// DOT graphs for every entry of a catalog.
    ExportDot(ValidateArgs),
}

#[derive(Args)]
struct PolygonArgs {
    /// triangle | square | latin-cross | witness | star:M | ngon:N | rect:A,B
    #[arg(long, conflicts_with = "input")]
    shape: Option<String>,
    /// Polygon JSON file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    epsilon: f64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Catalog,
    Dot,
    Summary,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    polygon: PolygonArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Count orbits under the polygon's symmetry group instead of gluings.
    #[arg(long)]
    quotient_symmetry: bool,
    #[arg(long, value_enum, default_value_t = Format::Catalog)]
    format: Format,
    /// Print search counters.
    #[arg(long)]
    profile: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Catalog JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Polygon JSON file the catalog was built from.
    #[arg(long, conflicts_with = "shape")]
    polygon: Option<PathBuf>,
    #[arg(long)]
    shape: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    epsilon: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConeArgs {
    #[arg(long)]
    k: usize,
    /// Bit pattern of length k-1, most significant digit first.
    #[arg(long, conflicts_with = "all")]
    bits: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "2")]
    r_bottom: String,
    #[arg(long, default_value = "1")]
    r_top: String,
    #[arg(long, default_value = "1")]
    height: String,
    /// SVG output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HalveArgs {
    #[command(flatten)]
    polygon: PolygonArgs,
    /// Perimeter offset of x, measured from v1.
    #[arg(long, default_value = "0")]
    x: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Summary)]
    format: Format,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    m: usize,
    /// Contraction word for the chain from x, length m/2.
    #[arg(long, requires = "bottom")]
    top: Option<String>,
    #[arg(long, requires = "top")]
    bottom: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct E2eArgs {
    #[command(flatten)]
    polygon: PolygonArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Catalog)]
    format: Format,
}

enum Failure {
    Input(String),
    Polygon(String),
    Timeout,
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Polygon(_) => 2,
            Failure::Timeout => 3,
            Failure::Invalid(_) => 4,
        }
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::BadParameter(s) => Failure::Input(s),
            e => Failure::Polygon(e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Polygon(p) => Failure::Polygon(p.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::BadParameter(s) => Failure::Input(s),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn threads() -> Option<usize> {
    std::env::var("FOLDTREE_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0)
}

fn named_shape(s: &str) -> Result<PolygonSpec, Failure> {
    let int = |v: &str| v.trim().parse::<usize>().map_err(|_| Failure::Input(format!("bad number in shape {s:?}")));
    let p = match s.split_once(':') {
        None => match s {
            "triangle" => equilateral_triangle(),
            "square" => unit_square(),
            "latin-cross" => latin_cross(),
            "witness" => unfoldable_witness(),
            _ => return Err(Failure::Input(format!("unknown shape {s:?}"))),
        },
        Some(("star", m)) => m_star(int(m)?)?,
        Some(("ngon", n)) => regular_ngon(int(n)?)?,
        Some(("rect", ab)) => {
            let (a, b) = ab.split_once(',').ok_or_else(|| Failure::Input("rect needs a,b".into()))?;
            rectangle(parse_q(a)?, parse_q(b)?)?
        }
        _ => return Err(Failure::Input(format!("unknown shape {s:?}"))),
    };
    Ok(p)
}

fn polygon_file(path: &PathBuf) -> Result<PolygonSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(read_polygon(&text)?)
}

fn load_polygon(shape: &Option<String>, file: &Option<PathBuf>, epsilon: f64) -> Result<PolygonSpec, Failure> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Failure::Input(format!("epsilon must be positive, got {epsilon}")));
    }
    let p = match (shape, file) {
        (Some(s), None) => named_shape(s)?,
        (None, Some(f)) => polygon_file(f)?,
        _ => return Err(Failure::Input("give exactly one of --shape or a polygon file".into())),
    };
    Ok(p.with_epsilon(epsilon))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(trees: &[GluingTree], p: &PolygonSpec, format: Format) -> String {
    match format {
        Format::Dot => trees.iter().filter_map(|t| to_dot(t).ok()).collect(),
        _ => write_catalog(trees, p),
    }
}

fn histogram(trees: &[GluingTree]) -> String {
    let mut h: BTreeMap<Shape, usize> = BTreeMap::new();
    for t in trees {
        *h.entry(t.shape()).or_insert(0) += 1;
    }
    let parts: Vec<String> = [Shape::Path, Shape::Y, Shape::I, Shape::Plus, Shape::Other]
        .iter()
        .map(|s| format!("{}={}", s, h.get(s).copied().unwrap_or(0)))
        .collect();
    parts.join(" ")
}

fn cmd_enumerate(a: &EnumerateArgs) -> Outcome {
    let p = load_polygon(&a.polygon.shape, &a.polygon.input, a.polygon.epsilon)?;
    if a.budget == 0 {
        return Err(Failure::Input("budget must be positive".into()));
    }
    let opts = EnumerateOptions { budget: a.budget, threads: threads(), ..Default::default() };
    let e = enumerate_gluings(&p, &opts);
    if a.quotient_symmetry {
        let g = symmetry_group(&p);
        println!("{}", quotient_by_symmetry(&e.trees, &g).len());
        println!("gluings: {} (symmetry group of order {})", e.count(), g.order());
    } else {
        println!("{}", e.count());
    }
    println!("shapes: {}", histogram(&e.trees));
    println!("rolling belts: {} in {} trees", e.trees.iter().map(|t| t.belts.len()).sum::<usize>(), e.trees.iter().filter(|t| !t.belts.is_empty()).count());
    if a.profile {
        let s = &e.stats;
        println!(
            "states: {} pruned_region: {} pruned_angle: {} cells: {} duplicates: {}",
            s.states, s.pruned_region, s.pruned_angle, s.cells, s.duplicates
        );
    }
    if a.format != Format::Summary {
        if let Some(path) = &a.out {
            emit(&Some(path.clone()), &render(&e.trees, &p, a.format))?;
        }
    }
    if !e.exhaustive {
        eprintln!("state budget of {} exhausted; results are partial", a.budget);
        return Err(Failure::Timeout);
    }
    Ok(())
}

fn catalog_polygon(a: &ValidateArgs) -> Result<(PolygonSpec, Vec<foldtree::catalog::CatalogEntry>), Failure> {
    let p = load_polygon(&a.shape, &a.polygon, a.epsilon)?;
    let text = fs::read_to_string(&a.input).map_err(|e| Failure::Input(format!("{}: {e}", a.input.display())))?;
    Ok((p, read_catalog(&text)?))
}

fn cmd_validate(a: &ValidateArgs) -> Outcome {
    let (p, entries) = catalog_polygon(a)?;
    if entries.is_empty() {
        eprintln!("warning: catalog is empty");
        println!("0 entries");
        return Ok(());
    }
    let reports = validate_catalog(&entries, &p)?;
    let bad: Vec<_> = reports.iter().filter(|r| !r.valid()).collect();
    for r in &bad {
        println!("entry {} {}: {}", r.index, r.key, r.issues.join("; "));
    }
    let keys: BTreeSet<&str> = entries.iter().map(|e| e.key.as_str()).collect();
    println!("{} entries, {} valid, {} distinct keys", entries.len(), entries.len() - bad.len(), keys.len());
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{} invalid entries", bad.len())))
    }
}

fn cmd_export_dot(a: &ValidateArgs) -> Outcome {
    let (p, entries) = catalog_polygon(a)?;
    let mut text = String::new();
    for e in &entries {
        let t = e.to_tree(&p)?;
        text.push_str(&to_dot(&t).map_err(|e| Failure::Invalid(e.to_string()))?);
    }
    emit(&a.out, &text)
}

fn cmd_unfold_cone(a: &ConeArgs) -> Outcome {
    let f = Frustum::new(a.k, parse_q(&a.r_bottom)?, parse_q(&a.r_top)?, parse_q(&a.height)?)?;
    if a.all {
        let c = distinct_unfoldings(&f);
        println!("{} simple, {} distinct", c.simple, c.distinct);
        println!("{} cut trees, {} non-simple", c.trees, c.non_simple);
        return Ok(());
    }
    let bits = a.bits.as_ref().ok_or_else(|| Failure::Input("give --bits or --all".into()))?;
    let t = volcano_cut_tree(&f, &parse_bits(bits, a.k)?)?;
    let report = validate_cut_tree(&f, &t);
    if !report.passed() {
        return Err(Failure::Invalid(report.violations.join("; ")));
    }
    let poly = unfold(&f, &t)?;
    eprintln!(
        "cut tree {}: {} cut segments, length {:.6}; development perimeter {:.6}, area {:.6}",
        t.bit_string(),
        t.edges.len(),
        t.cut_length(&f),
        poly.perimeter(),
        poly.area()
    );
    let unit = foldtree::angle::q_to_f64(&f.r_bottom) / 2.0;
    emit(&a.out, &poly.to_svg(unit))
}

fn summarize(t: &GluingTree, p: &PolygonSpec) -> Result<bool, Failure> {
    let r = check_aleksandrov(t, p).map_err(|e| Failure::Invalid(e.to_string()))?;
    let s = structural_check(t, p);
    println!("key: {}", t.canonical_key());
    println!("shape: {} leaves: {} belts: {}", t.shape(), t.leaf_count(), t.belts.len());
    for issue in r.issues.iter().chain(&s.violations) {
        println!("issue: {issue}");
    }
    let ok = r.valid && s.passed();
    println!("valid: {}", if ok { "yes" } else { "no" });
    Ok(ok)
}

fn cmd_perimeter_halve(a: &HalveArgs) -> Outcome {
    let p = load_polygon(&a.polygon.shape, &a.polygon.input, a.polygon.epsilon)?;
    let x = parse_q(&a.x)?;
    if x < Q::from_integer(0) || x >= p.perimeter() {
        return Err(Failure::Input(format!("x must lie in [0, {})", p.perimeter())));
    }
    let t = perimeter_halving(&p, x);
    let ok = summarize(&t, &p)?;
    if a.format != Format::Summary {
        emit(&a.out, &render(std::slice::from_ref(&t), &p, a.format))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid("perimeter halving gave an invalid gluing".into()))
    }
}

fn cmd_star_family(a: &StarArgs) -> Outcome {
    let p = m_star(a.m)?;
    if let (Some(top), Some(bottom)) = (&a.top, &a.bottom) {
        return match star_contraction_family(a.m, top, bottom)? {
            Some(t) => {
                summarize(&t, &p)?;
                if a.out.is_some() {
                    emit(&a.out, &write_catalog(std::slice::from_ref(&t), &p))?;
                }
                Ok(())
            }
            None => Err(Failure::Invalid(format!("contraction {top},{bottom} breaks the angle condition"))),
        };
    }
    let half = a.m / 2;
    // digit 0 is adjacent to a marked point and never contracted
    let words: Vec<String> = (0..1u64 << (half - 1))
        .map(|w| std::iter::once('0').chain((1..half).map(|i| if w >> (i - 1) & 1 == 1 { '1' } else { '0' })).collect())
        .collect();
    let mut seen: BTreeMap<String, GluingTree> = BTreeMap::new();
    let mut rejected = 0usize;
    for top in &words {
        for bottom in &words {
            match star_contraction_family(a.m, top, bottom)? {
                Some(t) => {
                    seen.entry(t.canonical_key().0).or_insert(t);
                }
                None => rejected += 1,
            }
        }
    }
    println!("{}", seen.len());
    println!("bound 2^(m/2-1) = {}; {} word pairs, {} rejected", 1u64 << (half - 1), words.len().pow(2), rejected);
    if a.out.is_some() {
        let trees: Vec<GluingTree> = seen.into_values().collect();
        emit(&a.out, &write_catalog(&trees, &p))?;
    }
    Ok(())
}

fn cmd_edge_to_edge(a: &E2eArgs) -> Outcome {
    let p = load_polygon(&a.polygon.shape, &a.polygon.input, a.polygon.epsilon)?;
    let matchings = enumerate_edge_to_edge(&p);
    let trees: Vec<GluingTree> = matchings.iter().map(|m| m.to_tree(&p)).collect();
    println!("{}", trees.len());
    println!("shapes: {}", histogram(&trees));
    if a.format != Format::Summary && a.out.is_some() {
        emit(&a.out, &render(&trees, &p, a.format))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = threads() {
        std::env::set_var("RAYON_NUM_THREADS", n.to_string());
    }
    let result = match &cli.verb {
        Verb::Enumerate(a) => cmd_enumerate(a),
        Verb::Validate(a) => cmd_validate(a),
        Verb::UnfoldCone(a) => cmd_unfold_cone(a),
        Verb::PerimeterHalve(a) => cmd_perimeter_halve(a),
        Verb::StarFamily(a) => cmd_star_family(a),
        Verb::EdgeToEdge(a) => cmd_edge_to_edge(a),
        Verb::ExportDot(a) => cmd_export_dot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Polygon(m) => eprintln!("invalid polygon: {m}"),
                Failure::Timeout => {}
                Failure::Invalid(m) => eprintln!("validity failure: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
