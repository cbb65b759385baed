use std::fs;
use std::path::Path;

use neron_core::cochain::Cochain0;
use neron_core::critical::{
    character_kernel, character_kernel_closed_form, complexity, critical_group, critical_order,
    verify_extension,
};
use neron_core::fibre::{decompose, minimal_level};
use neron_core::graph::DecoratedGraph;
use neron_core::jacobian::{abel_report, flow_gram, jacobian_group};
use neron_core::oracle::{complexity_by_trees, fixed_by_enumeration, kernel_by_enumeration};
use neron_core::sandpile::{class_coordinates, fire, is_divisor, Divisor};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Cli, Command, DivisorArg, LevelArg};
use crate::render;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Read { path: String, message: String },
    #[error("{0}")]
    Domain(#[from] neron_core::Error),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced: a JSON payload and the equivalent text lines.
struct Outcome {
    result: Value,
    lines: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<String> {
    let (name, file, args) = describe(&cli.command);
    let g = load(file)?;
    let outcome = execute(&cli.command, &g)?;
    if cli.json {
        let report = json!({
            "command": { "name": name, "file": file.display().to_string(), "args": args },
            "graph": render::summary(&g),
            "result": outcome.result,
            "version": env!("CARGO_PKG_VERSION"),
        });
        Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ))
    } else {
        let mut text = render::summary_text(&g);
        text.push('\n');
        for line in outcome.lines {
            text.push_str(&line);
            text.push('\n');
        }
        Ok(text)
    }
}

fn describe(command: &Command) -> (&'static str, &Path, Value) {
    match command {
        Command::Check(a) => ("check", &a.file, json!({})),
        Command::Complexity(a) => ("complexity", &a.file, json!({ "oracle": a.oracle })),
        Command::Critical(a) => ("critical", &a.file, json!({})),
        Command::Components(a) => ("components", &a.file, json!({ "oracle": a.oracle })),
        Command::Kernel { input, ell } => (
            "kernel",
            &input.file,
            json!({ "oracle": input.oracle, "ell": ell }),
        ),
        Command::Jacobian(a) => ("jacobian", &a.file, json!({ "oracle": a.oracle })),
        Command::Decompose { input, ell } => {
            let ell = match ell {
                LevelArg::Min => json!("min"),
                LevelArg::Value(n) => json!(n),
            };
            (
                "decompose",
                &input.file,
                json!({ "oracle": input.oracle, "ell": ell }),
            )
        }
        Command::Class { input, divisor } => (
            "class",
            &input.file,
            json!({ "divisor": divisor_echo(divisor) }),
        ),
        Command::Fire { input, divisor, at } => (
            "fire",
            &input.file,
            json!({ "divisor": divisor_echo(divisor), "at": at }),
        ),
    }
}

fn divisor_echo(d: &DivisorArg) -> Value {
    Value::Array(d.0.iter().map(|(v, x)| json!([v, x.to_string()])).collect())
}

fn load(path: &Path) -> Result<DecoratedGraph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(DecoratedGraph::parse(&text)?)
}

fn execute(command: &Command, g: &DecoratedGraph) -> Result<Outcome> {
    match command {
        Command::Check(_) => Ok(check(g)),
        Command::Complexity(a) => complexity_cmd(g, a.oracle),
        Command::Critical(_) => critical_cmd(g),
        Command::Components(a) => components_cmd(g, a.oracle),
        Command::Kernel { input, ell } => kernel_cmd(g, *ell, input.oracle),
        Command::Jacobian(a) => jacobian_cmd(g, a.oracle),
        Command::Decompose { input, ell } => decompose_cmd(g, *ell, input.oracle),
        Command::Class { divisor, .. } => class_cmd(g, divisor),
        Command::Fire { divisor, at, .. } => fire_cmd(g, divisor, at),
    }
}

fn check(g: &DecoratedGraph) -> Outcome {
    Outcome {
        result: json!({
            "valid": true,
            "stable": g.is_stable(),
            "genus": g.genus(),
            "betti": g.betti(),
        }),
        lines: vec!["valid: true".into()],
    }
}

fn complexity_cmd(g: &DecoratedGraph, oracle: bool) -> Result<Outcome> {
    let c = complexity(g)?;
    let mut result = json!({ "complexity": render::int(&c) });
    let mut lines = vec![format!("complexity: {c}")];
    if oracle {
        let by_trees = complexity_by_trees(g)?;
        if by_trees != c {
            return Err(CliError::OracleMismatch(format!(
                "minor formula gives {c}, tree enumeration gives {by_trees}"
            )));
        }
        result["oracle"] = render::int(&by_trees);
        lines.push(format!("oracle (tree enumeration): {by_trees}"));
    }
    Ok(Outcome { result, lines })
}

fn critical_cmd(g: &DecoratedGraph) -> Result<Outcome> {
    let k = critical_group(g)?;
    let predicted = critical_order(g)?;
    let formula_holds = k.order().as_ref() == Some(&predicted);
    Ok(Outcome {
        result: json!({
            "critical_group": render::group(&k),
            "order_formula": render::int(&predicted),
            "order_formula_holds": formula_holds,
        }),
        lines: vec![
            format!("critical group: {k}"),
            format!(
                "order formula: {predicted} ({})",
                if formula_holds { "agrees" } else { "DISAGREES" }
            ),
        ],
    })
}

fn components_cmd(g: &DecoratedGraph, oracle: bool) -> Result<Outcome> {
    let r = verify_extension(g)?;
    let mut result = json!({
        "component_group": render::group(&r.total),
        "extension": {
            "kernel": render::group(&r.kernel),
            "total": render::group(&r.total),
            "quotient": render::group(&r.quotient),
            "orders_multiply": r.orders_multiply,
            "injection_verified": r.injection_verified,
        },
    });
    let mut lines = vec![
        format!("component group: {}", r.total),
        format!("character kernel: {}", r.kernel),
        format!("critical group: {}", r.quotient),
        format!("orders multiply: {}", r.orders_multiply),
        format!("injection verified: {}", r.injection_verified),
    ];
    if oracle {
        let by_trees = complexity_by_trees(g)?;
        if r.total.order() != Some(by_trees.clone()) {
            return Err(CliError::OracleMismatch(format!(
                "component group {} has order other than the tree count {by_trees}",
                r.total
            )));
        }
        result["oracle"] = json!({ "complexity_by_trees": render::int(&by_trees) });
        lines.push(format!("oracle (tree enumeration): order {by_trees}"));
    }
    Ok(Outcome { result, lines })
}

fn kernel_cmd(g: &DecoratedGraph, ell: u64, oracle: bool) -> Result<Outcome> {
    let by_snf = character_kernel(g, ell)?;
    let closed = character_kernel_closed_form(&g.with_scaled_thickness(ell)?)?;
    let agree = by_snf == closed;
    let mut result = json!({
        "kernel": render::group(&by_snf),
        "closed_form": render::group(&closed),
        "closed_form_agrees": agree,
    });
    let mut lines = vec![
        format!("kernel at level {ell}: {by_snf}"),
        format!(
            "closed form: {closed} ({})",
            if agree { "agrees" } else { "DISAGREES" }
        ),
    ];
    if oracle {
        let enumerated = kernel_by_enumeration(g, ell)?;
        if enumerated != by_snf {
            return Err(CliError::OracleMismatch(format!(
                "enumeration gives {enumerated}, SNF gives {by_snf}"
            )));
        }
        result["oracle"] = render::group(&enumerated);
        lines.push(format!("oracle (enumeration): {enumerated}"));
    }
    Ok(Outcome { result, lines })
}

fn jacobian_cmd(g: &DecoratedGraph, oracle: bool) -> Result<Outcome> {
    let gram = flow_gram(g)?;
    let j = jacobian_group(g)?;
    let abel = abel_report(g)?;
    let iota = &abel.iota;
    let mut result = json!({
        "gram": render::matrix(&gram),
        "jacobian": render::group(&j),
        "component_group": render::group(&abel.component),
        "abel_holds": abel.holds(),
        "iota": {
            "level": iota.level,
            "image": render::group(&iota.image),
            "fixed": render::group(&iota.fixed),
            "image_in_fixed": iota.image_in_fixed,
            "kills_relations": iota.kills_relations,
            "injective": iota.injective,
            "onto_fixed": iota.onto_fixed,
        },
    });
    let mut lines = vec![
        format!("gram: {}", render::matrix_text(&gram)),
        format!("jacobian: {j}"),
        format!("component group: {}", abel.component),
        format!("abel: {}", abel.holds()),
        format!(
            "iota at level {}: image {}, fixed {}",
            iota.level, iota.image, iota.fixed
        ),
    ];
    if oracle {
        let by_trees = complexity_by_trees(g)?;
        let det = gram.determinant();
        if det != by_trees {
            return Err(CliError::OracleMismatch(format!(
                "Gram determinant {det}, tree count {by_trees}"
            )));
        }
        result["oracle"] = json!({ "complexity_by_trees": render::int(&by_trees) });
        lines.push(format!("oracle (tree enumeration): {by_trees}"));
    }
    Ok(Outcome { result, lines })
}

fn decompose_cmd(g: &DecoratedGraph, ell: LevelArg, oracle: bool) -> Result<Outcome> {
    let level = match ell {
        LevelArg::Min => minimal_level(g)?,
        LevelArg::Value(n) => n,
    };
    let r = decompose(g, level)?;
    let mut result = json!({
        "level": r.level,
        "total_label_count": render::int(&r.total_label_count),
        "fixed_label_count": render::int(&r.fixed_label_count),
        "fixed_group": render::group(&r.fixed_group),
        "neron_match": r.neron_match,
        "minimal_level": r.minimal_level,
    });
    let mut lines = vec![
        format!("level: {}", r.level),
        format!("component labels: {}", r.total_label_count),
        format!("fixed labels: {}", r.fixed_label_count),
        format!("fixed group: {}", r.fixed_group),
        format!("neron match: {}", r.neron_match),
        format!("minimal level: {}", r.minimal_level),
    ];
    if oracle {
        let kernel = kernel_by_enumeration(g, level)?;
        let fixed = fixed_by_enumeration(g, level)?;
        if kernel.order() != Some(r.total_label_count.clone()) || fixed != r.fixed_group {
            return Err(CliError::OracleMismatch(format!(
                "enumeration gives {} labels with fixed group {fixed}",
                kernel.order().expect("finite")
            )));
        }
        result["oracle"] =
            json!({ "kernel": render::group(&kernel), "fixed": render::group(&fixed) });
        lines.push(format!(
            "oracle (enumeration): kernel {kernel}, fixed {fixed}"
        ));
    }
    Ok(Outcome { result, lines })
}

fn divisor_values(g: &DecoratedGraph, d: &DivisorArg) -> Result<Cochain0> {
    let mut values = vec![BigRational::zero(); g.vertex_count()];
    for (id, x) in &d.0 {
        let v = g
            .vertex_index(id)
            .ok_or_else(|| neron_core::Error::UnknownVertex(id.clone()))?;
        values[v] += x;
    }
    Ok(Cochain0(values))
}

fn class_cmd(g: &DecoratedGraph, d: &DivisorArg) -> Result<Outcome> {
    let f = divisor_values(g, d)?;
    let (values, values_text) = render::vertex_values(g, &f.0);
    if !is_divisor(g, &f) {
        return Ok(Outcome {
            result: json!({ "divisor": values, "is_divisor": false, "coordinates": null }),
            lines: vec![
                format!("divisor: {values_text}"),
                "is divisor: false".into(),
            ],
        });
    }
    let k = critical_group(g)?;
    let coords = class_coordinates(g, &Divisor::new(g, f)?)?;
    let coords_text = coords
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome {
        result: json!({
            "divisor": values,
            "is_divisor": true,
            "critical_group": render::group(&k),
            "coordinates": render::ints(&coords),
        }),
        lines: vec![
            format!("divisor: {values_text}"),
            "is divisor: true".into(),
            format!("critical group: {k}"),
            format!("class coordinates: ({coords_text})"),
        ],
    })
}

fn fire_cmd(g: &DecoratedGraph, d: &DivisorArg, at: &str) -> Result<Outcome> {
    let b = Divisor::new(g, divisor_values(g, d)?)?;
    let fired = fire(g, &b, at)?;
    let (values, text) = render::vertex_values(g, fired.values());
    Ok(Outcome {
        result: json!({ "at": at, "divisor": values }),
        lines: vec![format!("fired {at}: {text}")],
    })
}
