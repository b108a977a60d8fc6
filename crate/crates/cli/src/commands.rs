use std::fmt::Write as _;
use std::path::Path;

use covforge_core::groups::RepSum;
use covforge_core::integrity::{
    build_family, denominators_independent, enumerate_hironaka, oracle_dimension, BasisFile, BuildOptions,
    HironakaTerm, IntegrityBasis,
};
use covforge_core::molien::{format_univariate, molien_direct, molien_recursive, slice_denominator_degrees, GenFun};
use covforge_core::polyalg::rank_and_basis;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{partner_index, resolve_final, resolve_finals, resolve_group, resolve_rep, Failure, Outcome};
use crate::{BasisArgs, EnumerateArgs, Format, MolienArgs, VerifyArgs};

/// Elementary denominator degrees of every slice, sorted.
fn family_degrees(rep: &RepSum) -> Vec<u32> {
    let g = rep.group();
    let mut out: Vec<u32> = rep
        .slices()
        .iter()
        .flat_map(|s| slice_denominator_degrees(g, s.irrep))
        .collect();
    out.sort_unstable();
    out
}

fn taylor_strings(f: &GenFun, order: usize) -> Vec<String> {
    f.taylor(order).iter().map(ToString::to_string).collect()
}

fn header(rep: &RepSum, final_label: &str) -> String {
    format!(
        "group {}; initial {}; final {}",
        rep.group().name(),
        rep.spec_string(),
        final_label
    )
}

pub fn molien(args: &MolienArgs) -> Outcome<String> {
    let group = resolve_group(&args.job.group)?;
    let rep = resolve_rep(&group, args.job.initial.as_deref())?;
    let gamma = resolve_final(&group, args.job.final_irrep.as_deref())?;
    let direct = molien_direct(&group, gamma, &rep).map_err(Failure::config)?;
    let uni = direct.specialize();
    let degrees = family_degrees(&rep);
    let canonical = direct.canonicalize(&degrees).ok();
    let coeffs = taylor_strings(&uni, args.order);
    let label = group.irrep(gamma).label();
    Ok(match args.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "# {}", header(&rep, label));
            let _ = writeln!(s, "molien: {uni}");
            if let Some(n) = &canonical {
                let _ = writeln!(s, "canonical: {}", format_univariate(n, &degrees));
            }
            let _ = writeln!(s, "coefficients: {}", coeffs.join(","));
            s
        }
        Format::Json => {
            let canonical = canonical.map(|n| {
                json!({
                    "numerator": n.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "denominator_degrees": degrees,
                })
            });
            let v = json!({
                "group": group.name(),
                "initial": rep.spec_string(),
                "final": label,
                "graded": direct.to_json(),
                "molien": uni.to_json(),
                "canonical": canonical,
                "coefficients": coeffs,
            });
            pretty(&v)
        }
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// `from degree a: n_a n_{a+1} …; total N`, starting at the lowest
/// occupied degree.
pub fn count_summary(counts: &[usize]) -> String {
    let total: usize = counts.iter().sum();
    let Some(lo) = counts.iter().position(|&c| c > 0) else {
        return "no numerators; total 0".to_string();
    };
    let body: Vec<String> = counts[lo..].iter().map(ToString::to_string).collect();
    format!("numerators by degree from {lo}: {}; total {total}", body.join(" "))
}

fn build_one(rep: &RepSum, gamma: usize) -> Outcome<IntegrityBasis> {
    Ok(build_family(rep, &BuildOptions::default())?.basis(gamma))
}

fn render(basis: &IntegrityBasis, format: Format) -> String {
    match format {
        Format::Json => basis.to_file().to_json(),
        Format::Text => basis.to_text(),
    }
}

fn write_output(path: &Path, body: &str) -> Outcome<()> {
    std::fs::write(path, body).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

pub fn basis(args: &BasisArgs) -> Outcome<String> {
    let group = resolve_group(&args.job.group)?;
    let rep = resolve_rep(&group, args.job.initial.as_deref())?;
    let gamma = resolve_final(&group, args.job.final_irrep.as_deref())?;
    let basis = build_one(&rep, gamma)?;
    let body = render(&basis, args.format);
    let mut out = String::new();
    match &args.output {
        Some(p) if p.as_os_str() == "-" => out.push_str(&body),
        Some(p) => write_output(p, &body)?,
        None => {}
    }
    let degrees: Vec<String> = basis.denominator_degrees().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "# {}", header(&rep, basis.final_label()));
    let _ = writeln!(out, "denominator degrees: {}", degrees.join(" "));
    let _ = writeln!(out, "{}", count_summary(&basis.numerator_counts()));
    Ok(out)
}

fn term_label(t: &HironakaTerm) -> String {
    let mut s = format!("g{}", t.numerator + 1);
    for (j, &e) in t.exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => {
                let _ = write!(s, " f{}", j + 1);
            }
            _ => {
                let _ = write!(s, " f{}^{e}", j + 1);
            }
        }
    }
    s
}

pub fn enumerate(args: &EnumerateArgs) -> Outcome<String> {
    let basis = match &args.basis {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            let file = BasisFile::from_json(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            let group = resolve_group(args.group.as_deref().unwrap_or(&file.group))?;
            file.load(&group)?
        }
        None => {
            let group = resolve_group(args.group.as_deref().unwrap_or("td"))?;
            let rep = resolve_rep(&group, args.initial.as_deref())?;
            let gamma = resolve_final(&group, args.final_irrep.as_deref())?;
            build_one(&rep, gamma)?
        }
    };
    let group = basis.group().clone();
    let partner = partner_index(&group, basis.final_irrep(), args.partner.as_deref())?;
    let partner_name = &group.irrep(basis.final_irrep()).partner_names()[partner];
    let terms = enumerate_hironaka(&basis, partner, args.dmax);
    let mut per_degree = vec![0usize; args.dmax as usize + 1];
    for t in &terms {
        per_degree[t.degree as usize] += 1;
    }
    Ok(match args.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# {}; partner {partner_name}; dmax {}",
                header(basis.rep(), basis.final_label()),
                args.dmax
            );
            for t in &terms {
                let _ = writeln!(s, "[{}] {}", t.degree, term_label(t));
            }
            for (d, n) in per_degree.iter().enumerate() {
                let _ = writeln!(s, "degree {d}: {n}");
            }
            let _ = writeln!(s, "total {}", terms.len());
            s
        }
        Format::Json => {
            let list: Vec<Value> = terms
                .iter()
                .map(|t| json!({"degree": t.degree, "numerator": t.numerator + 1, "exponents": t.exponents}))
                .collect();
            pretty(&json!({
                "group": group.name(),
                "initial": basis.rep().spec_string(),
                "final": basis.final_label(),
                "partner": partner_name,
                "dmax": args.dmax,
                "terms": list,
                "per_degree": per_degree,
                "total": terms.len(),
            }))
        }
    })
}

/// One row of the agreement table.
struct Triple {
    irrep: String,
    degree: u32,
    oracle: usize,
    molien: String,
    span: usize,
    terms: usize,
}

impl Triple {
    fn ok(&self) -> bool {
        self.molien == self.oracle.to_string() && self.span == self.oracle && self.terms == self.span
    }

    fn describe(&self) -> String {
        format!(
            "Γ={} degree {}: oracle {}, molien {}, span {}, terms {}",
            self.irrep, self.degree, self.oracle, self.molien, self.span, self.terms
        )
    }
}

struct Structural {
    name: &'static str,
    irrep: Option<String>,
    ok: bool,
}

/// Report text plus the first failure, if any.
pub fn verify(args: &VerifyArgs) -> Outcome<(String, Option<String>)> {
    let group = resolve_group(&args.job.group)?;
    let rep = resolve_rep(&group, args.job.initial.as_deref())?;
    let finals = resolve_finals(&group, args.job.final_irrep.as_deref())?;
    let opts = BuildOptions {
        cg_fault: args.inject_cg_fault,
    };
    let mut report = json!({
        "group": group.name(),
        "initial": rep.spec_string(),
        "finals": finals.iter().map(|&i| group.irrep(i).label()).collect::<Vec<_>>(),
        "dmax": args.dmax,
    });
    let family = match build_family(&rep, &opts) {
        Ok(f) => f,
        Err(e) => {
            let detail = e.to_string();
            let failure = Failure::from(e);
            if let Failure::Config(_) = failure {
                return Err(failure);
            }
            let msg = format!("basis construction: {detail}");
            report["build"] = json!({"ok": false, "error": detail});
            report["pass"] = json!(false);
            return Ok((pretty(&report), Some(msg)));
        }
    };
    report["build"] = json!({"ok": true});

    let mut structural = Vec::new();
    let nirr = group.irreps().len();
    let direct: Vec<GenFun> = (0..nirr)
        .map(|g| molien_direct(&group, g, &rep))
        .collect::<Result<_, _>>()
        .map_err(Failure::config)?;
    let recursive = molien_recursive(&group, &rep).map_err(Failure::config)?;
    let mut total = GenFun::zero(1);
    for (g, f) in direct.iter().enumerate() {
        let weighted = f.specialize().scale(group.irrep(g).dim() as i64);
        total = total.try_add(&weighted).map_err(Failure::config)?;
    }
    let free = GenFun::univariate(&[1], &vec![1; rep.dim()]);
    structural.push(Structural {
        name: "hilbert_completeness",
        irrep: None,
        ok: total == free,
    });
    let dens = family.denominators();
    let degrees: Vec<u32> = dens.iter().map(|f| f.degree().unwrap_or(0)).collect();
    structural.push(Structural {
        name: "denominators_independent",
        irrep: None,
        ok: denominators_independent(&dens, 1),
    });
    structural.push(Structural {
        name: "denominators_invariant",
        irrep: None,
        ok: dens.iter().all(|f| rep.is_covariant(group.trivial_irrep(), std::slice::from_ref(f))),
    });
    for &g in &finals {
        let label = Some(group.irrep(g).label().to_string());
        structural.push(Structural {
            name: "recursive_matches_direct",
            irrep: label.clone(),
            ok: direct[g].specialize() == recursive[g].specialize(),
        });
        let counts = family.basis(g).numerator_counts();
        let canonical = direct[g].canonicalize(&degrees).map_err(Failure::config)?;
        let agree = (0..counts.len().max(canonical.len())).all(|k| {
            let want = canonical.get(k).map(ToString::to_string).unwrap_or_else(|| "0".into());
            want == counts.get(k).copied().unwrap_or(0).to_string()
        });
        structural.push(Structural {
            name: "numerator_counts",
            irrep: label.clone(),
            ok: agree,
        });
        structural.push(Structural {
            name: "numerators_covariant",
            irrep: label,
            ok: family.numerators(g).iter().all(|t| t.is_equivariant(&rep)),
        });
    }

    let dmax = args.dmax;
    let triples: Vec<Vec<Triple>> = finals
        .par_iter()
        .map(|&g| {
            let taylor = direct[g].taylor(dmax as usize);
            let terms = enumerate_hironaka(&family.basis(g), 0, dmax);
            (0..=dmax)
                .map(|n| {
                    let slice: Vec<_> = terms.iter().filter(|t| t.degree == n).map(|t| t.poly.clone()).collect();
                    Triple {
                        irrep: group.irrep(g).label().to_string(),
                        degree: n,
                        oracle: oracle_dimension(&rep, g, 0, n),
                        molien: taylor[n as usize].to_string(),
                        span: rank_and_basis(&slice).0,
                        terms: slice.len(),
                    }
                })
                .collect()
        })
        .collect();
    let triples: Vec<Triple> = triples.into_iter().flatten().collect();

    let first = structural
        .iter()
        .find(|s| !s.ok)
        .map(|s| match &s.irrep {
            Some(i) => format!("{} (Γ={i})", s.name),
            None => s.name.to_string(),
        })
        .or_else(|| triples.iter().find(|t| !t.ok()).map(Triple::describe));

    report["structural"] = structural
        .iter()
        .map(|s| json!({"check": s.name, "irrep": s.irrep, "ok": s.ok}))
        .collect();
    report["triples"] = triples
        .iter()
        .map(|t| {
            json!({
                "irrep": t.irrep,
                "degree": t.degree,
                "oracle": t.oracle,
                "molien": t.molien,
                "span": t.span,
                "terms": t.terms,
                "ok": t.ok(),
            })
        })
        .collect();
    report["pass"] = json!(first.is_none());
    Ok((pretty(&report), first))
}
