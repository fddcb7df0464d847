use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use kyfan_core::flag::{verify_condition3, random_points, GenericFlag, DEFAULT_VERIFY_MAX_N};
use kyfan_core::format::{read_fixture, write_fixture};
use kyfan_core::generators::{
    builtin_base, cross_polytope_sphere, hopf_s3, klein_bundle, trivial_bundle, ColoringStatus, Fixture,
};
use kyfan_core::simplicial::{
    alt_histogram, kyfan_parity, max_alt, search_nice_coloring, validate, LabeledComplex, SearchOutcome,
    ValidationReport,
};
use kyfan_core::z2::{
    height_of_t, invert_total_class, reduce_t_power, tangent_total_class, w_conner, w_table_recurrence,
    GradedRing, ProjectiveSpace, RingElement, TPowerExpression, TotalClass,
};
use kyfan_core::zcells::{
    build_z_complex, dimension_lemma_check, effective_counts, pseudomanifold_check, three_way_disagreements,
    BoundVerdict, HeightHypothesis,
};
use kyfan_core::{Flag, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::report::{Check, Report};

/// Caps `N` for the exhaustive `3^N` face enumeration when building a flag.
pub const VERIFY_CAP_ENV: &str = "KYFAN_VERIFY_MAX_N";

const AXIOMS: [&str; 5] =
    ["facet closure", "free simplicial involution", "antipodal labels", "no antipodal edge", "bundle metadata"];

fn load(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    read_fixture(&text).with_context(|| format!("in {}", path.display()))
}

fn summary(fx: &Fixture) -> Vec<String> {
    let lc = &fx.lc;
    let c = &lc.complex;
    let mut lines = vec![
        format!("vertices: {}, facets: {}, dimension: {}", c.vertex_count(), c.facets().len(), c.dim()),
        format!("f-vector: {:?}, Euler characteristic: {}", c.f_vector(), c.euler_characteristic()),
        format!("colors N = {}, fiber n = {}, base k = {}", lc.coloring.n_colors(), lc.meta.n, lc.meta.k),
        format!("declared coloring: {}", fx.status.as_str()),
    ];
    if let Some(w) = &lc.bundle_class {
        lines.push(format!("bundle class: w = {w} in {}", w.ring()));
    }
    if !fx.description.is_empty() {
        lines.push(format!("description: {}", fx.description));
    }
    lines
}

fn axiom_checks(report: &mut Report, v: &ValidationReport) {
    for axiom in AXIOMS {
        let witnesses = v.violations.iter().filter(|x| x.axiom() == axiom).map(|x| x.to_string()).collect();
        report.check(Check::from_witnesses(axiom, witnesses));
    }
}

/// Adds the axiom checks and returns the complex only when the coloring is nice.
fn require_nice<'a>(report: &mut Report, fx: &'a Fixture) -> Option<&'a LabeledComplex> {
    let v = validate(&fx.lc);
    if v.is_nice() {
        report.check(Check::pass("nice coloring axioms"));
        Some(&fx.lc)
    } else {
        axiom_checks(report, &v);
        None
    }
}

pub fn validate_cmd(path: &Path) -> Result<Report> {
    let fx = load(path)?;
    let mut r = Report::new("validate", Some(path.display().to_string()));
    r.section("complex", summary(&fx));
    let v = validate(&fx.lc);
    r.fact("nice", v.is_nice());
    axiom_checks(&mut r, &v);
    Ok(r)
}

pub fn alt_stats(path: &Path, paired: bool) -> Result<Report> {
    let fx = load(path)?;
    let mut r = Report::new("alt-stats", Some(path.display().to_string()));
    r.section("complex", summary(&fx));
    let Some(lc) = require_nice(&mut r, &fx) else { return Ok(r) };
    let hist = alt_histogram(lc, paired);
    let mut rows: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for ((d, a), c) in &hist {
        rows.entry(*d).or_default().insert(*a, *c);
    }
    let mut lines = Vec::new();
    for (d, row) in &rows {
        let cells: Vec<String> = row.iter().map(|(a, c)| format!("{a}: {c}")).collect();
        let total: usize = row.values().sum();
        let text = format!("{{{}}}", cells.join(", "));
        lines.push(format!("dim {d}: {text}  total {total}"));
        r.fact(format!("dim{d}"), text);
    }
    let max = max_alt(lc);
    lines.push(format!("max Alt = {max}"));
    r.fact("max_alt", max);
    r.section(if paired { "Alt histogram (antipodal pairs)" } else { "Alt histogram (simplices)" }, lines);
    Ok(r)
}

pub fn kyfan_check(path: &Path, n: Option<usize>) -> Result<Report> {
    let fx = load(path)?;
    let mut r = Report::new("kyfan-check", Some(path.display().to_string()));
    r.section("complex", summary(&fx));
    let Some(lc) = require_nice(&mut r, &fx) else { return Ok(r) };
    let n = n.unwrap_or_else(|| lc.complex.dim().max(0) as usize);
    let p = kyfan_parity(lc, n);
    r.fact("parity", p.parity);
    r.fact("total", p.total);
    if let Some(obstruction) = p.obstruction {
        r.section("alternating n-simplices", vec![format!("n = {n}: {obstruction}")]);
        r.check(Check::fail("Ky Fan parity", vec![obstruction]));
        return Ok(r);
    }
    let mut lines: Vec<String> = p
        .alpha
        .iter()
        .map(|(pattern, count)| {
            let labels: Vec<String> = pattern.iter().map(|l| format!("{l:+}")).collect();
            format!("alpha({}) = {count}", labels.join(","))
        })
        .collect();
    lines.push(format!("sum = {} (mod 2 = {})", p.total, p.parity));
    r.section(format!("alternating {n}-simplices"), lines);
    let check = if p.parity == 1 {
        Check::pass("Ky Fan parity")
    } else {
        Check::fail("Ky Fan parity", vec![format!("{} alternating {n}-simplices with positive first label (even)", p.total)])
    };
    r.check(check.count("alternating", p.total));
    Ok(r)
}

fn verify_cap() -> Result<usize> {
    match std::env::var(VERIFY_CAP_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{VERIFY_CAP_ENV} must be a nonnegative integer")),
        Err(_) => Ok(DEFAULT_VERIFY_MAX_N),
    }
}

pub fn zset(path: &Path, i: usize, xseed: Option<u64>) -> Result<Report> {
    let fx = load(path)?;
    let mut r = Report::new("zset", Some(path.display().to_string()));
    r.section("complex", summary(&fx));
    let Some(lc) = require_nice(&mut r, &fx) else { return Ok(r) };
    let (n, k) = (lc.meta.n, lc.meta.k);
    let n_colors = lc.coloring.n_colors() as usize;
    if n + i == 0 {
        bail!("Z_i needs n + i >= 1");
    }
    let j = n + i - 1;

    let mut notes = Vec::new();
    if i > k {
        notes.push(format!("i = {i} > k = {k}: Z_i has negative expected dimension and is empty"));
    }
    let flag: Option<Flag> = if j + 2 <= n_colors {
        let x = match xseed {
            Some(seed) => random_points(n_colors, &mut ChaCha8Rng::seed_from_u64(seed)),
            None => (1..=n_colors as i64).map(|v| Rational::from_integer(v.into())).collect(),
        };
        let flag = GenericFlag::new(j, x).context("building the flag")?;
        let xs: Vec<String> = flag.points().iter().map(|v| v.to_string()).collect();
        let mut lines = vec![format!("N = {n_colors}, level j = n + i - 1 = {j}"), format!("x = ({})", xs.join(", "))];
        let cap = verify_cap()?;
        if n_colors <= cap {
            let bad: Vec<String> = (0..=j)
                .flat_map(|l| verify_condition3(&flag, l).into_iter().map(move |f| format!("level {l}: face {f}")))
                .collect();
            lines.push(format!("transversality checked on all 3^{n_colors} faces at levels 0..={j}"));
            r.check(Check::from_witnesses("flag transversality", bad));
        } else {
            lines.push(format!("transversality not enumerated: N = {n_colors} exceeds {VERIFY_CAP_ENV} = {cap}"));
        }
        r.section("flag", lines);
        Some(flag)
    } else {
        None
    };

    let z = match &flag {
        Some(f) => build_z_complex(lc, f, i)?,
        None => {
            // no flag level exists; the complex is empty because Alt <= N - 1
            let placeholder = GenericFlag::new(0, vec![Rational::from_integer(1.into()), Rational::from_integer(2.into())])?;
            build_z_complex(lc, &placeholder, i)?
        }
    };
    if let Some(note) = &z.note {
        notes.push(note.clone());
    }

    let mut lines: Vec<String> =
        z.counts_by_dim().iter().map(|(d, c)| format!("dim {d}: {c} cells")).collect();
    if z.is_empty() {
        lines.push("no cells".into());
    }
    lines.extend(notes);
    r.section(format!("Z_{i} cells"), lines);
    r.fact("cells", z.len());
    r.fact("top_dim", z.top_dim().map_or("none".to_string(), |d| d.to_string()));

    let lemma = dimension_lemma_check(lc, &z);
    let mut w: Vec<String> = lemma
        .wrong_dimension
        .iter()
        .map(|(s, d)| format!("{} has cell dimension {d}, expected {}", lc.fmt_simplex(s), s.dim() - (n + i) as isize))
        .collect();
    w.extend(lemma.missing_cells.iter().map(|s| format!("{} is {i}-effective but has no cell", lc.fmt_simplex(s))));
    w.extend(lemma.ineffective_carriers.iter().map(|s| format!("{} carries a cell but Alt < n + i", lc.fmt_simplex(s))));
    r.check(Check::from_witnesses("dimension lemma and cell/effective-simplex bijection", w).count("cells", lemma.checked));

    if let Some(f) = &flag {
        let bad = three_way_disagreements(lc, f, i).iter().map(|s| lc.fmt_simplex(s)).collect();
        r.check(Check::from_witnesses("cell exists <=> image meets plane <=> Alt >= n + i", bad));
    }

    if i <= k && !z.is_empty() {
        let expected = k - i;
        let pm = pseudomanifold_check(&z, expected);
        let purity: Vec<String> = pm
            .purity_violations
            .iter()
            .map(|(s, d)| format!("maximal cell over {} has dimension {d}", lc.fmt_simplex(s)))
            .collect();
        r.check(Check::from_witnesses(format!("purity (dimension {expected})"), purity));
        if i == 0 {
            let cof: Vec<String> = pm
                .cofacet_violations
                .iter()
                .map(|(s, c)| format!("cell over {} lies in {c} top cells", lc.fmt_simplex(s)))
                .collect();
            r.check(Check::from_witnesses("pseudomanifold (two cofacets per codimension-one cell)", cof));
        }
    }

    let hypothesis = HeightHypothesis::for_level(lc, i);
    let count = effective_counts(lc, i, hypothesis);
    r.fact("pairs", count.pairs);
    r.fact("bound", count.bound);
    let mut lines = vec![
        format!("pairs of {}-simplices with Alt >= {}: {}", count.dim, n + i, count.pairs),
        format!("bound k + 1 - i = {}", count.bound),
    ];
    if let Some(s) = &count.witness {
        lines.push(format!("example: {} with labels {:?}", lc.fmt_simplex(s), lc.coloring.labels_of(s).collect::<Vec<_>>()));
    }
    match hypothesis {
        HeightHypothesis::Holds => lines.push(format!("t^{} != 0 for the bundle class, bound asserted", n + i)),
        HeightHypothesis::Fails => lines.push(format!("t^{} = 0 for the bundle class, bound not asserted", n + i)),
        HeightHypothesis::Unknown => lines.push("no bundle class in the file, bound not asserted".into()),
    }
    r.section("effective simplices", lines);
    match count.verdict {
        BoundVerdict::Pass => r.check(Check::pass("effective simplex count >= k + 1 - i").count("pairs", count.pairs)),
        BoundVerdict::Fail => r.check(
            Check::fail(
                "effective simplex count >= k + 1 - i",
                vec![format!("only {} pairs of {}-simplices with Alt >= {}", count.pairs, count.dim, n + i)],
            )
            .count("pairs", count.pairs),
        ),
        BoundVerdict::NotAsserted => {}
    }

    if i == 0 {
        r.check(Check::not_checked("pushforward of Z_0 to the base is nontrivial in homology"));
    }
    r.check(Check::not_checked(format!("Z_{i} represents the Poincare dual of t^{}", n + i)));
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassFile {
    ring: String,
    w: String,
    rank: u32,
    k: Option<u32>,
}

/// Count claims for tangent sphere bundles that are stronger than what the
/// effective-simplex bound proves, keyed by space.
fn stronger_claims(space: ProjectiveSpace) -> Vec<String> {
    match space {
        ProjectiveSpace::Real(m) if m.is_power_of_two() && m >= 2 => vec![format!(
            "at least 3 pairs of simplices with Alt >= {} for every nice coloring",
            2 * m - 2
        )],
        ProjectiveSpace::Complex(2) => vec!["at least 3 simplices with Alt >= 7 for every nice coloring".into()],
        _ => Vec::new(),
    }
}

pub fn sw(space: Option<&str>, file: Option<&Path>, powers: Option<u32>) -> Result<Report> {
    let (label, w, n, k, parsed) = match (space, file) {
        (Some(s), _) => {
            let ps = ProjectiveSpace::parse(s)?;
            let t = tangent_total_class(ps);
            (ps.to_string(), t.w, t.n, t.k, Some(ps))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let cf: ClassFile = toml::from_str(&text).with_context(|| format!("in {}", path.display()))?;
            if cf.rank == 0 {
                bail!("rank must be at least 1");
            }
            let ring = GradedRing::parse(&cf.ring)?;
            let w = TotalClass::from_total(&RingElement::parse(&ring, &cf.w)?, cf.rank)?;
            let k = cf.k.unwrap_or(ring.top_degree());
            (path.display().to_string(), w, cf.rank - 1, k, None)
        }
        (None, None) => bail!("either --space or --file is required"),
    };
    let m_max = powers.unwrap_or(n + k + 1);
    let mut r = Report::new("sw", Some(label));
    let dual = invert_total_class(&w);
    r.section(
        "bundle",
        vec![
            format!("ring: {}", w.ring()),
            format!("w = {w}"),
            format!("w-bar = {dual}"),
            format!("rank {} (fiber S^{n}), base dimension k = {k}", w.rank()),
        ],
    );
    r.fact("w", &w);
    r.fact("w_bar", &dual);
    let product = &w.total() * &dual.total();
    r.check(if product.is_one() {
        Check::pass("w * w-bar = 1")
    } else {
        Check::fail("w * w-bar = 1", vec![format!("w * w-bar = {product}")])
    });

    if m_max > n {
        let j_max = m_max - n - 1;
        let table = w_table_recurrence(&w, n, j_max);
        let mut lines = Vec::new();
        let mut mismatches = Vec::new();
        for j in 0..=j_max {
            let row: Vec<String> = (1..=n + 1).map(|i| table.get(i, j).to_string()).collect();
            lines.push(format!("j = {j}: {}", row.join(" | ")));
            for i in 1..=n + 1 {
                let rec = table.get(i, j);
                r.fact(format!("W_{{{i},{j}}}"), &rec);
                let con = w_conner(&w, i, j);
                if rec != con {
                    mismatches.push(format!("W_{{{i},{j}}}: recurrence {rec}, convolution {con}"));
                }
            }
        }
        r.section(format!("W_{{i,j}} for i = 1..{} (columns), by j", n + 1), lines);
        r.check(Check::from_witnesses("W table: recurrence = convolution", mismatches));
    }

    let mut lines = Vec::new();
    let mut iterated = TPowerExpression::basis(&w, n, 0);
    let mut disagreements = Vec::new();
    for m in 0..=m_max {
        let reduced = reduce_t_power(&w, n, m);
        if reduced != iterated {
            disagreements.push(format!("t^{m}: convolution {reduced}, iterated relation {iterated}"));
        }
        if m > n {
            lines.push(format!("t^{m} = {reduced}"));
        }
        r.fact(format!("t^{m}"), &reduced);
        iterated = iterated.times_t(&w);
    }
    r.section("powers of t", lines);
    r.check(Check::from_witnesses("t powers: convolution = iterated relation", disagreements));

    let h = height_of_t(&w, n, k);
    r.fact("height", h);
    let mut lines = vec![format!("height of t = {h} (t^{h} != 0, t^{} = 0)", h + 1)];
    for i in 0..=h.saturating_sub(n) {
        let bound = i64::from(k) + 1 - i64::from(i);
        if bound > 0 {
            lines.push(format!(
                "i = {i}: every nice coloring has at least {bound} pair(s) of {}-simplices with Alt >= {}",
                n + i,
                n + i
            ));
        }
    }
    lines.push(format!("some simplex has Alt >= {h}; at least N >= {} colors are needed", h + 1));
    r.section("consequences for nice colorings", lines);

    if let Some(ps) = parsed {
        let claims = stronger_claims(ps);
        if !claims.is_empty() {
            r.section("stronger count claims (unverified)", claims);
        }
    }
    Ok(r)
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(".{}.tmp", path.file_name().and_then(|n| n.to_str()).unwrap_or("fixture")));
    std::fs::write(&tmp, text).with_context(|| format!("cannot write {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("cannot move into {}", path.display()))?;
    Ok(())
}

fn parse_kind(kind: &str) -> Result<Fixture> {
    let (name, arg) = kind.split_once(':').unwrap_or((kind, ""));
    let fx = match name {
        "crosspoly" => cross_polytope_sphere(arg.parse().with_context(|| format!("bad sphere dimension in `{kind}`"))?),
        "hopf" if arg.is_empty() => hopf_s3(),
        "klein" => klein_bundle(arg.parse().with_context(|| format!("bad segment count in `{kind}`"))?)?,
        "trivial" => {
            let (base, n) = arg.rsplit_once(',').with_context(|| format!("expected trivial:<base>,n, got `{kind}`"))?;
            let n: usize = n.trim().parse().with_context(|| format!("bad fiber dimension in `{kind}`"))?;
            let base = match builtin_base(base) {
                Ok(b) => b,
                Err(builtin) => {
                    let path = Path::new(base);
                    if !path.exists() {
                        return Err(builtin.into());
                    }
                    load(path)?.lc.complex
                }
            };
            trivial_bundle(&base, n)?
        }
        _ => bail!("unknown kind `{kind}` (expected crosspoly:n, trivial:<base>,n, klein:m or hopf)"),
    };
    Ok(fx)
}

pub fn generate(kind: &str, output: &Path, search_seed: Option<u64>, colors: u32) -> Result<Report> {
    let mut fx = parse_kind(kind)?;
    let mut r = Report::new("generate", Some(kind.to_string()));
    if let Some(seed) = search_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match search_nice_coloring(&fx.lc.complex, &fx.lc.involution, colors, &mut rng, Some(10_000_000)) {
            SearchOutcome::Found(c) => {
                fx.lc.coloring = c;
                fx.status = ColoringStatus::Nice;
                fx.description.push_str(&format!("; coloring found by search with {colors} colors, seed {seed}"));
            }
            SearchOutcome::Exhausted => bail!("no nice coloring with {colors} colors exists on this triangulation"),
            SearchOutcome::Aborted => bail!("coloring search with {colors} colors gave up"),
        }
    }
    let report = validate(&fx.lc);
    if !report.is_nice() {
        fx.status = ColoringStatus::Candidate;
    }
    let text = write_fixture(&fx);
    let again = write_fixture(&read_fixture(&text)?);
    r.section("complex", summary(&fx));
    r.check(Check::from_witnesses(
        "canonical round trip",
        if again == text { Vec::new() } else { vec!["re-serialized text differs".into()] },
    ));
    write_atomic(output, &text)?;
    r.section("output", vec![format!("wrote {}", output.display())]);
    r.fact("coloring", fx.status.as_str());
    Ok(r)
}
