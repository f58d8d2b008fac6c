use std::io::Write;
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use mackey_dade::burnside::BurnsideRing;
use mackey_dade::dade::{dmu_dim, underline_dmu, MackeyDadeVector};
use mackey_dade::exactla::{render_rational, Field, PrimeField, QMatrix, Rationals};
use mackey_dade::group::{builtin_specs, make_group, FiniteGroup, DEFAULT_ORDER_BOUND};
use mackey_dade::lambda::{alpha, lambda_basis, lambda_dim, lambda_mult, lin_mu_direct, lin_mu_via_alpha};
use mackey_dade::mackey::{bar_all, build_algebra, burnside_functor, check_relations, fixed_point_functor};
use mackey_dade::pgroup::PGroup;
use mackey_dade::verify::{matrix_json, verify_group, VerificationReport, VerifyOptions};
use mackey_dade::Error;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mackey-dade", version, about = "Subquotient, Dade and Mackey computations for small p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Group spec such as C4, C2xC2, D8, Q16, He27.
    #[arg(long, global = true)]
    group: Option<String>,

    /// Coefficient field for the bar and twin computations.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Q)]
    field: FieldArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    max_order: usize,

    /// Seed for the randomized property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Record wall-clock milliseconds per verification check.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subgroups, conjugacy classes and subquotient classes.
    Lattice,
    /// The table of marks.
    Marks,
    /// Product of two subquotient basis classes.
    Lambda {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
    },
    /// The alpha matrix into the Weyl-group Burnside sum.
    Alpha,
    /// Both Mackey linearization matrices and the kernel.
    Linmu,
    /// Rank of the Mackey-Dade group and the relative syzygy submodule.
    Dade,
    /// Mackey algebra dimension, relation checks and bar dimensions.
    Mackey,
    /// Runs the verification catalog (all built-in groups when --group is absent).
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Text form of a rational: integers without the denominator.
fn short(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        x.to_string()
    }
}

struct Table {
    title: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: &str, header: &[&str]) -> Self {
        Table { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn matrix(title: &str, m: &QMatrix, row_label: impl Fn(usize) -> String) -> Self {
        let mut header = vec![String::new()];
        header.extend((0..m.cols()).map(|j| j.to_string()));
        let rows = (0..m.rows())
            .map(|i| {
                let mut r = vec![row_label(i)];
                r.extend(m.row(i).iter().map(short));
                r
            })
            .collect();
        Table { title: title.into(), header, rows }
    }
}

/// One subcommand's output in both shapes.
struct Report {
    json: Value,
    tables: Vec<Table>,
}

fn render_text(tables: &[Table], out: &mut String) {
    for t in tables {
        out.push_str(&format!("{}\n", t.title));
        let widths: Vec<usize> = (0..t.header.len())
            .map(|j| t.rows.iter().map(|r| r[j].len()).chain([t.header[j].len()]).max().unwrap_or(0))
            .collect();
        for row in std::iter::once(&t.header).chain(&t.rows) {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(&format!("  {}\n", cells.join("  ").trim_end()));
        }
        out.push('\n');
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(tables: &[Table], out: &mut String) {
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# {}\n", t.title));
        for row in std::iter::once(&t.header).chain(&t.rows) {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
}

fn load(cli: &Cli) -> Result<PGroup, Error> {
    let spec = cli.group.as_deref().ok_or_else(|| Error::InvalidArgument("--group is required".into()))?;
    PGroup::with_bound(make_group(spec)?, cli.max_order)
}

fn subgroup_label(g: &FiniteGroup, h: mackey_dade::group::Subgroup) -> String {
    if h == g.whole() {
        "P".into()
    } else if h.is_trivial() {
        "1".into()
    } else {
        h.to_string()
    }
}

fn lattice_report(p: &PGroup) -> Report {
    let (g, l, sq) = (p.group(), p.lattice(), p.subquotients());
    let mut subs = Table::new("subgroups", &["index", "order", "members", "class", "cyclic", "normalizer"]);
    for (i, &h) in l.subgroups().iter().enumerate() {
        subs.push(vec![
            i.to_string(),
            h.order().to_string(),
            h.to_string(),
            l.class_of(i).to_string(),
            l.is_cyclic(i).to_string(),
            l.normalizer(i).order().to_string(),
        ]);
    }
    let mut classes = Table::new("subgroup classes", &["class", "representative", "order", "size", "cyclic"]);
    for c in 0..l.class_count() {
        let rep = l.class_rep(c);
        classes.push(vec![
            c.to_string(),
            rep.to_string(),
            rep.order().to_string(),
            l.classes()[c].size().to_string(),
            l.is_class_cyclic(c).to_string(),
        ]);
    }
    let mut sqt = Table::new("subquotient classes", &["class", "Q", "N", "order", "cyclic", "size"]);
    for (c, class) in sq.classes().iter().enumerate() {
        sqt.push(vec![
            c.to_string(),
            subgroup_label(g, class.rep.big),
            subgroup_label(g, class.rep.small),
            (class.rep.big.order() / class.rep.small.order()).to_string(),
            p.is_subquotient_cyclic(c).to_string(),
            class.size.to_string(),
        ]);
    }
    let json = json!({
        "group": p.name(),
        "order": g.order(),
        "subgroups": l.subgroups().iter().enumerate().map(|(i, h)| json!({
            "members": h.member_vec(), "class": l.class_of(i), "cyclic": l.is_cyclic(i),
            "normalizer": l.normalizer(i).member_vec(),
        })).collect::<Vec<_>>(),
        "classes": (0..l.class_count()).map(|c| json!({
            "representative": l.class_rep(c).member_vec(), "size": l.classes()[c].size(), "cyclic": l.is_class_cyclic(c),
        })).collect::<Vec<_>>(),
        "subquotients": sq.classes().iter().enumerate().map(|(c, class)| json!({
            "q": class.rep.big.member_vec(), "n": class.rep.small.member_vec(),
            "cyclic": p.is_subquotient_cyclic(c), "size": class.size,
        })).collect::<Vec<_>>(),
        "noncyclic_subquotients": p.noncyclic_subquotient_classes(),
    });
    Report { json, tables: vec![subs, classes, sqt] }
}

fn marks_report(p: &PGroup) -> Report {
    let ring = BurnsideRing::new(p.group(), p.lattice());
    let table = ring.mark_table().matrix;
    let kernel = ring.lin_kernel();
    let json = json!({
        "group": p.name(),
        "marks": matrix_json(&table),
        "lin_kernel_dim": kernel.cols(),
        "lin_kernel": matrix_json(&kernel.transpose()),
    });
    let mut summary = Table::new("linearization", &["kernel dim"]);
    summary.push(vec![kernel.cols().to_string()]);
    Report {
        json,
        tables: vec![Table::matrix("table of marks (rows G/H, columns K)", &table, |i| format!("[{i}]")), summary],
    }
}

fn lambda_report(p: &PGroup, left: usize, right: usize) -> Result<Report, Error> {
    let n = lambda_dim(p);
    if left >= n || right >= n {
        return Err(Error::InvalidArgument(format!("class index out of range (0..{n})")));
    }
    let prod = lambda_mult(p, &lambda_basis(p, left), &lambda_basis(p, right))?;
    let mut t = Table::new("product", &["class", "Q", "N", "coefficient"]);
    let mut terms = Vec::new();
    for (c, x) in prod.coords.iter().enumerate().filter(|(_, x)| !Rationals.is_zero(x)) {
        let rep = p.subquotients().rep(c);
        let coeff = short(x);
        t.push(vec![
            c.to_string(),
            subgroup_label(p.group(), rep.big),
            subgroup_label(p.group(), rep.small),
            coeff.clone(),
        ]);
        terms.push(json!({"class": c, "coefficient": render_rational(x)}));
    }
    let json = json!({"group": p.name(), "left": left, "right": right, "product": terms});
    Ok(Report { json, tables: vec![t] })
}

fn alpha_report(p: &PGroup) -> Report {
    let a = alpha(p);
    let json =
        json!({"group": p.name(), "rows": a.rows(), "cols": a.cols(), "rank": a.rank(), "alpha": matrix_json(&a)});
    Report { json, tables: vec![Table::matrix("alpha", &a, |i| i.to_string())] }
}

fn linmu_report(p: &PGroup) -> Result<Report, Error> {
    let direct = lin_mu_direct(p);
    let via = lin_mu_via_alpha(p);
    let diff = direct.sub(&via)?;
    let kernel = direct.nullspace();
    let json = json!({
        "group": p.name(),
        "direct": matrix_json(&direct),
        "via_alpha": matrix_json(&via),
        "difference": matrix_json(&diff),
        "rank": direct.rank(),
        "kernel_dim": kernel.cols(),
        "kernel": matrix_json(&kernel.transpose()),
    });
    let mut summary = Table::new("summary", &["rank", "kernel dim", "routes agree"]);
    summary.push(vec![direct.rank().to_string(), kernel.cols().to_string(), diff.is_zero().to_string()]);
    let label = |i: usize| i.to_string();
    Ok(Report {
        json,
        tables: vec![
            Table::matrix("direct", &direct, label),
            Table::matrix("via alpha", &via, label),
            Table::matrix("difference", &diff, label),
            Table::matrix("kernel basis (rows)", &kernel.transpose(), label),
            summary,
        ],
    })
}

fn dade_report(p: &PGroup) -> Result<Report, Error> {
    let dim = dmu_dim(p)?;
    let u = underline_dmu(p)?;
    let layout = p.dade_layout();
    let supports = (0..u.cols())
        .map(|j| MackeyDadeVector::from_flat(p, &u.column(j)).map(|v| v.support()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut blocks = Table::new("blocks", &["Q class", "Q", "Weyl order", "Dade rank"]);
    for (b, w) in p.weyl_blocks().iter().enumerate() {
        blocks.push(vec![
            w.class.to_string(),
            subgroup_label(p.group(), w.rep),
            w.group().order().to_string(),
            layout.size(b).to_string(),
        ]);
    }
    let mut summary = Table::new("summary", &["dmu dim", "underline dim"]);
    summary.push(vec![dim.to_string(), u.cols().to_string()]);
    let json = json!({
        "group": p.name(),
        "dmu_dim": dim,
        "block_dims": (0..layout.blocks()).map(|b| layout.size(b)).collect::<Vec<_>>(),
        "underline_dim": u.cols(),
        "underline_basis": matrix_json(&u.transpose()),
        "underline_support": supports,
    });
    Ok(Report {
        json,
        tables: vec![blocks, Table::matrix("underline basis (rows)", &u.transpose(), |i| i.to_string()), summary],
    })
}

fn bar_dims<F: Field>(g: &FiniteGroup, field: F) -> Result<(Vec<usize>, Vec<usize>), Error> {
    let b = bar_all(&burnside_functor(g, field.clone())?)?.dims().to_vec();
    let f = bar_all(&fixed_point_functor(g, field)?)?.dims().to_vec();
    Ok((b, f))
}

fn mackey_report(p: &PGroup, field: FieldArg) -> Result<Report, Error> {
    let g = p.group();
    let alg = build_algebra(g)?;
    let rel = check_relations(&alg)?;
    let (field_name, (burnside, fixed)) = match field {
        FieldArg::Q => ("Q".to_string(), bar_dims(g, Rationals)?),
        FieldArg::Fp => (format!("F{}", g.prime()), bar_dims(g, PrimeField::new(g.prime())?)?),
    };
    let mut summary = Table::new("algebra", &["dim", "relations checked"]);
    summary.push(vec![alg.dim().to_string(), rel.total().to_string()]);
    let mut rels = Table::new("relation checks", &["relation", "identities"]);
    for (i, n) in rel.checked.iter().enumerate() {
        rels.push(vec![format!("({})", i + 1), n.to_string()]);
    }
    let mut bars = Table::new(&format!("bar dimensions over {field_name}"), &["subgroup", "burnside", "fixed points"]);
    for (i, h) in p.lattice().subgroups().iter().enumerate() {
        bars.push(vec![subgroup_label(g, *h), burnside[i].to_string(), fixed[i].to_string()]);
    }
    let json = json!({
        "group": p.name(),
        "dim": alg.dim(),
        "relations_checked": rel.checked,
        "field": field_name,
        "bar_burnside": burnside,
        "bar_fixed_points": fixed,
    });
    Ok(Report { json, tables: vec![summary, rels, bars] })
}

fn verify_reports(cli: &Cli) -> Result<Vec<VerificationReport>, Error> {
    let opts = VerifyOptions { seed: cli.seed, timing: cli.timing };
    let groups: Vec<FiniteGroup> = match &cli.group {
        Some(spec) => {
            let g = make_group(spec)?;
            if g.order() > cli.max_order {
                return Err(Error::TooLarge { order: g.order(), bound: cli.max_order });
            }
            vec![g]
        }
        None => builtin_specs()
            .iter()
            .map(|s| make_group(s))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|g| g.order() <= cli.max_order)
            .collect(),
    };
    let mut reports = thread::scope(|s| {
        let handles: Vec<_> = groups.iter().map(|g| s.spawn(move || verify_group(g, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("verify thread panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    reports.sort_by(|a, b| a.group.cmp(&b.group));
    Ok(reports)
}

fn verify_tables(reports: &[VerificationReport]) -> Vec<Table> {
    let mut t = Table::new("verification", &["group", "check", "status", "witness", "millis"]);
    for r in reports {
        for c in &r.checks {
            let status = serde_json::to_value(c.status).expect("status serializes");
            let witness: Vec<String> =
                c.witness.iter().filter(|(_, v)| !v.is_array()).map(|(k, v)| format!("{k}={v}")).collect();
            t.push(vec![
                r.group.clone(),
                c.id.clone(),
                status.as_str().unwrap_or_default().to_string(),
                witness.join(" "),
                c.millis.to_string(),
            ]);
        }
    }
    vec![t]
}

fn run(cli: &Cli) -> Result<(String, bool), Error> {
    let report = match &cli.command {
        Command::Verify => {
            let reports = verify_reports(cli)?;
            let ok = reports.iter().all(VerificationReport::passed);
            let text = match cli.format {
                Format::Json if reports.len() == 1 => pretty(&reports[0]),
                Format::Json => pretty(&reports),
                format => render(format, &verify_tables(&reports)),
            };
            return Ok((text, ok));
        }
        Command::Lattice => lattice_report(&load(cli)?),
        Command::Marks => marks_report(&load(cli)?),
        Command::Lambda { left, right } => lambda_report(&load(cli)?, *left, *right)?,
        Command::Alpha => alpha_report(&load(cli)?),
        Command::Linmu => linmu_report(&load(cli)?)?,
        Command::Dade => dade_report(&load(cli)?)?,
        Command::Mackey => mackey_report(&load(cli)?, cli.field)?,
    };
    let text = match cli.format {
        Format::Json => pretty(&report.json),
        format => render(format, &report.tables),
    };
    Ok((text, true))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn render(format: Format, tables: &[Table]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => render_csv(tables, &mut out),
        _ => render_text(tables, &mut out),
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
