use serde::Serialize;

use oml_core::catalog::CatalogError;
use oml_core::congruence::congruence_properties;
use oml_core::free::{kind_part, make_free, preimage_sym_diff, to_term, NavaraElement};
use oml_core::terms::{check_identity, eval, parse, parse_equation, Assignment};
use oml_core::{ElementSet, LatticeSpec, Oml, SymDiffKind};

use crate::{Format, Outcome};

pub struct Context {
    pub format: Format,
    pub max_size: usize,
    pub lattice: Option<LatticeSpec>,
}

type CmdResult = Result<Outcome, String>;

impl Context {
    fn spec(&self) -> Result<&LatticeSpec, String> {
        self.lattice
            .as_ref()
            .ok_or_else(|| "this subcommand needs --lattice".to_string())
    }

    fn lattice(&self) -> Result<Oml, String> {
        self.spec()?
            .resolve(self.max_size)
            .map_err(|e| e.to_string())
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn names(l: &Oml, set: &ElementSet) -> Vec<String> {
    set.iter().map(|e| l.name(e)).collect()
}

fn named_assignment(l: &Oml, a: &Assignment) -> Vec<(String, String)> {
    a.iter().map(|(k, &v)| (k.clone(), l.name(v))).collect()
}

#[derive(Serialize)]
struct ValidateJson {
    valid: bool,
    elements: Option<usize>,
    error: Option<String>,
    witness: Vec<String>,
}

pub fn validate(ctx: &Context) -> CmdResult {
    let spec = ctx.spec()?;
    let checked = match spec.resolve(ctx.max_size) {
        // Tabulated constructors are re-checked from their order data.
        Ok(l) => oml_core::catalog::validate_named(&l.to_raw()),
        Err(e) => Err(e),
    };
    let report = match checked {
        Ok(l) => ValidateJson {
            valid: true,
            elements: Some(l.size()),
            error: None,
            witness: Vec::new(),
        },
        Err(CatalogError::Invalid {
            error,
            witness_names,
        }) => ValidateJson {
            valid: false,
            elements: None,
            error: Some(error.kind().to_string()),
            witness: witness_names,
        },
        Err(e) => return Err(e.to_string()),
    };
    match ctx.format {
        Format::Json => emit_json(&report),
        Format::Text if report.valid => {
            println!("valid OML, {} elements", report.elements.unwrap_or(0))
        }
        Format::Text => println!(
            "invalid: {} witness ({})",
            report.error.as_deref().unwrap_or(""),
            report.witness.join(",")
        ),
    }
    Ok(if report.valid {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

#[derive(Serialize)]
struct IdentityJson {
    equation: String,
    holds: bool,
    tuples_checked: u64,
    counterexample: Option<Vec<(String, String)>>,
    lhs_value: Option<String>,
    rhs_value: Option<String>,
}

pub fn identity(ctx: &Context, equation: &str) -> CmdResult {
    let (lhs, rhs) = parse_equation(equation).map_err(|e| format!("{equation}: {e}"))?;
    let l = ctx.lattice()?;
    let report = check_identity(&l, &lhs, &rhs);
    let values = report.counterexample.as_ref().map(|cx| {
        let v = |t| l.name(eval(&l, t, cx).expect("counterexample binds every variable"));
        (v(&lhs), v(&rhs))
    });
    let json = IdentityJson {
        equation: format!("{lhs} = {rhs}"),
        holds: report.holds,
        tuples_checked: report.tuples_checked,
        counterexample: report
            .counterexample
            .as_ref()
            .map(|cx| named_assignment(&l, cx)),
        lhs_value: values.as_ref().map(|v| v.0.clone()),
        rhs_value: values.as_ref().map(|v| v.1.clone()),
    };
    match ctx.format {
        Format::Json => emit_json(&json),
        Format::Text => {
            if json.holds {
                println!("holds ({} assignments checked)", json.tuples_checked);
            } else {
                let cx: Vec<String> = json
                    .counterexample
                    .iter()
                    .flatten()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                println!(
                    "counterexample: {} (lhs={}, rhs={}) after {} assignments",
                    cx.join(", "),
                    json.lhs_value.as_deref().unwrap_or(""),
                    json.rhs_value.as_deref().unwrap_or(""),
                    json.tuples_checked
                );
            }
        }
    }
    Ok(if report.holds {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

#[derive(Serialize)]
struct TableJson {
    term: String,
    rows: String,
    columns: Option<String>,
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

fn print_matrix(l: &Oml, cell: impl Fn(usize, usize) -> String) {
    let labels: Vec<String> = l.elements().map(|e| l.name(e)).collect();
    let width = labels.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let header: Vec<String> = labels.iter().map(|s| pad(s)).collect();
    println!("{} | {}", pad(""), header.join(" "));
    for a in l.elements() {
        let row: Vec<String> = l.elements().map(|b| pad(&cell(a, b))).collect();
        println!("{} | {}", pad(&labels[a]), row.join(" "));
    }
}

pub fn table(ctx: &Context, text: &str) -> CmdResult {
    let term = parse(text).map_err(|e| format!("{text}: {e}"))?;
    let vars: Vec<String> = term.free_vars().into_iter().collect();
    if vars.is_empty() || vars.len() > 2 {
        return Err(format!(
            "table needs a term in one or two variables, got {}",
            vars.len()
        ));
    }
    let l = ctx.lattice()?;
    let value = |a: usize, b: usize| {
        let mut env = Assignment::new();
        env.insert(vars[0].clone(), a);
        if let Some(v) = vars.get(1) {
            env.insert(v.clone(), b);
        }
        eval(&l, &term, &env).expect("all variables bound")
    };
    let two = vars.len() == 2;
    let table: Vec<Vec<String>> = l
        .elements()
        .map(|a| {
            if two {
                l.elements().map(|b| l.name(value(a, b))).collect()
            } else {
                vec![l.name(value(a, 0))]
            }
        })
        .collect();
    match ctx.format {
        Format::Json => emit_json(&TableJson {
            term: term.to_string(),
            rows: vars[0].clone(),
            columns: vars.get(1).cloned(),
            elements: l.elements().map(|e| l.name(e)).collect(),
            table,
        }),
        Format::Text => {
            println!(
                "{term}  (rows: {}, columns: {})",
                vars[0],
                vars.get(1).map_or("-", |s| s)
            );
            if two {
                print_matrix(&l, |a, b| table[a][b].clone());
            } else {
                for a in l.elements() {
                    println!("{} | {}", l.name(a), table[a][0]);
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct RelationsJson {
    elements: Vec<String>,
    commutes: Vec<Vec<bool>>,
    perspective: Vec<Vec<bool>>,
}

pub fn relations(ctx: &Context) -> CmdResult {
    let l = ctx.lattice()?;
    let commutes: Vec<Vec<bool>> = l
        .elements()
        .map(|a| l.elements().map(|b| l.commutes(a, b)).collect())
        .collect();
    let perspective: Vec<Vec<bool>> = l
        .elements()
        .map(|a| {
            l.elements()
                .map(|b| l.perspective(a, b).is_some())
                .collect()
        })
        .collect();
    match ctx.format {
        Format::Json => emit_json(&RelationsJson {
            elements: l.elements().map(|e| l.name(e)).collect(),
            commutes,
            perspective,
        }),
        Format::Text => {
            let bit = |b: bool| if b { "1" } else { "0" }.to_string();
            println!("commutes (C):");
            print_matrix(&l, |a, b| bit(commutes[a][b]));
            println!("perspective (~):");
            print_matrix(&l, |a, b| bit(perspective[a][b]));
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct FreeElementJson {
    index: usize,
    navara: String,
    term: String,
}

#[derive(Serialize)]
struct SymDiffJson {
    kind: &'static str,
    symbol: &'static str,
    navara: String,
    formula_value: String,
}

#[derive(Serialize)]
struct FreeJson {
    elements: Vec<FreeElementJson>,
    x: String,
    y: String,
    sym_diffs: Vec<SymDiffJson>,
}

pub fn free(ctx: &Context) -> CmdResult {
    let f = make_free();
    let pre = preimage_sym_diff();
    let sym_diffs: Vec<SymDiffJson> = SymDiffKind::ALL
        .iter()
        .map(|&k| {
            let e = pre
                .iter()
                .find(|e| e.part == kind_part(k))
                .expect("each kind has a preimage element");
            SymDiffJson {
                kind: k.name(),
                symbol: k.symbol(),
                navara: e.to_string(),
                formula_value: f.oml.name(f.oml.sym_diff(k, f.x, f.y)),
            }
        })
        .collect();
    let report = FreeJson {
        elements: NavaraElement::all()
            .map(|e| FreeElementJson {
                index: e.index(),
                navara: e.to_string(),
                term: to_term(e).to_string(),
            })
            .collect(),
        x: f.oml.name(f.x),
        y: f.oml.name(f.y),
        sym_diffs,
    };
    match ctx.format {
        Format::Json => emit_json(&report),
        Format::Text => {
            println!(
                "free OML on x = {}, y = {}: {} elements (atom bits xy xy' x'y x'y' : MO2 part)",
                report.x,
                report.y,
                report.elements.len()
            );
            for e in &report.elements {
                println!("{:>2} {}  {}", e.index, e.navara, e.term);
            }
            println!("preimage of u △ v ({} elements):", pre.len());
            for s in &report.sym_diffs {
                println!(
                    "{:<7}{:<4}{:<8}x {} y = {}",
                    s.kind, s.symbol, s.navara, s.symbol, s.formula_value
                );
            }
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct CongruenceJson {
    ideal: Vec<String>,
    blocks: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CongruencesJson {
    congruences: Vec<CongruenceJson>,
    regular: bool,
    uniform: bool,
    permutable: bool,
}

pub fn congruences(ctx: &Context) -> CmdResult {
    let l = ctx.lattice()?;
    let report = congruence_properties(&l);
    let json = CongruencesJson {
        congruences: report
            .congruences
            .iter()
            .map(|(i, theta)| CongruenceJson {
                ideal: names(&l, i.members()),
                blocks: theta.classes().iter().map(|c| names(&l, c)).collect(),
            })
            .collect(),
        regular: report.regular,
        uniform: report.uniform,
        permutable: report.permutable,
    };
    match ctx.format {
        Format::Json => emit_json(&json),
        Format::Text => {
            let braces = |v: &[String]| format!("{{{}}}", v.join(" "));
            for c in &json.congruences {
                let blocks: Vec<String> = c.blocks.iter().map(|b| braces(b)).collect();
                println!("ideal {} blocks {}", braces(&c.ideal), blocks.join(" "));
            }
            println!(
                "regular={} uniform={} permutable={}",
                json.regular, json.uniform, json.permutable
            );
        }
    }
    Ok(Outcome::Ok)
}
