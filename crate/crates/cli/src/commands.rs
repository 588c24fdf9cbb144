use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use momentkit::builders::{
    blowup_cut, cpn_model, so5_example, su3_natural, su3_natural_blowup, su3_skew,
};
use momentkit::format::{model_to_json, parse_model, parse_point_set, polytope_to_json};
use momentkit::geometry::{convex_hull, cut, Halfspace, Polytope, QVector};
use momentkit::lie::{weyl_group, Family, RootSystem};
use momentkit::model::{
    choose_generator, classify_vertices, deformation_report, dominant_slice, morse_report,
    mu_t_from_kirwan, reflective, validate_model, Generator, HamiltonianModel, ModelError,
};
use momentkit::numeric::run_sampling;
use momentkit::rational::{int, rat, Rational};
use momentkit::render::{render_svg, Figure, Layer, Marker, Stroke};
use serde_json::{json, Value};

use crate::{Command, ExampleName, ModelInput, Output};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_model(path: &Path) -> Result<HamiltonianModel> {
    parse_model(&read(path)?).with_context(|| format!("cannot parse model {}", path.display()))
}

/// Points of a point-set file, or the fixed images of a model file.
fn load_points(path: &Path) -> Result<Vec<QVector>> {
    let text = read(path)?;
    match parse_point_set(&text) {
        Ok(points) => Ok(points),
        Err(point_err) => match parse_model(&text) {
            Ok(m) => Ok(m.fixed_points().iter().map(|p| p.image().clone()).collect()),
            Err(_) => {
                Err(point_err).with_context(|| format!("cannot parse point set {}", path.display()))
            }
        },
    }
}

fn load_polytope(path: &Path) -> Result<Polytope> {
    let points = load_points(path)?;
    convex_hull(&points).with_context(|| format!("cannot take the hull of {}", path.display()))
}

fn emit(output: &Output, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn print(text: &str) -> Result<()> {
    emit(&Output { out: None }, text)
}

fn list(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn strings(v: &QVector) -> Value {
    Value::from(v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn generator(m: &HamiltonianModel, xi: Option<QVector>) -> Result<Generator> {
    let g = match xi {
        Some(xi) => Generator::new(xi),
        None => choose_generator(m)?,
    };
    g.certify(m)?;
    Ok(g)
}

fn parse_group(name: &str) -> Result<RootSystem> {
    let mut chars = name.chars();
    let family = match chars.next() {
        Some('A') | Some('a') => Family::A,
        Some('B') | Some('b') => Family::B,
        _ => bail!("unknown group {name:?}; expected A<rank> or B<rank>"),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| anyhow!("unknown group {name:?}; expected A<rank> or B<rank>"))?;
    Ok(RootSystem::build(family, rank)?)
}

fn root_system(m: &HamiltonianModel) -> Result<&RootSystem> {
    m.root_system()
        .ok_or_else(|| ModelError::NoRootSystem.into())
}

/// The given polytope, or the dominant slice of the model's image hull.
fn dominant_polytope(m: &HamiltonianModel, delta: Option<&Path>) -> Result<Polytope> {
    let rs = root_system(m)?;
    match delta {
        Some(path) => load_polytope(path),
        None => dominant_slice(&m.image_hull()?, rs)?
            .ok_or_else(|| anyhow!("the image hull misses the dominant chamber")),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Validate { model } => validate(&model),
        Command::Betti(input) => betti(input),
        Command::Deform(input) => deform(input),
        Command::Hull { input, output } => {
            emit(&output, &polytope_to_json(&load_polytope(&input)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::WeylHull {
            group,
            delta,
            output,
        } => {
            let rs = parse_group(&group)?;
            let w = weyl_group(&rs)?;
            let hull = mu_t_from_kirwan(&load_polytope(&delta)?, &w)?;
            emit(&output, &polytope_to_json(&hull))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reflective {
            model,
            point,
            delta,
            json,
        } => reflective_cmd(&model, &point, delta.as_deref(), json),
        Command::Classify { model, delta, json } => classify(&model, delta.as_deref(), json),
        Command::Example {
            name,
            t,
            s,
            gamma,
            delta,
            epsilon,
            n,
            output,
        } => {
            let one = int(1);
            let t = t.unwrap_or_else(|| one.clone());
            let s = s.unwrap_or_else(|| one.clone());
            let m = match name {
                ExampleName::Su3Natural => su3_natural(&t, &s)?,
                ExampleName::Su3Skew => su3_skew(&t, &s)?,
                ExampleName::So5 => {
                    so5_example(&gamma.unwrap_or_else(|| one.clone()), &delta.unwrap_or(one))?
                }
                ExampleName::Su3NaturalBlowup => {
                    su3_natural_blowup(&t, &s, &epsilon.unwrap_or_else(|| rat(1, 4)))?
                }
                ExampleName::Cpn => cpn_model(n.unwrap_or(2), &t)?,
            };
            emit(&output, &model_to_json(&m))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cut {
            input,
            normal,
            offset,
            vertex,
            epsilon,
            output,
        } => {
            let p = load_polytope(&input)?;
            let result = match (normal, offset, vertex, epsilon) {
                (Some(normal), Some(offset), None, _) => cut(&p, &Halfspace::new(normal, offset)?)?
                    .ok_or_else(|| anyhow!("the cut is empty"))?,
                (None, _, Some(vertex), Some(epsilon)) => blowup_cut(&p, &vertex, &epsilon)?,
                _ => bail!("give either --normal and --offset or --vertex and --epsilon"),
            };
            emit(&output, &polytope_to_json(&result))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            action,
            t,
            s,
            seed,
            count,
            tol,
            output,
        } => {
            let report = run_sampling(action, &t, &s, seed, count, tol)?;
            emit(&output, &serde_json::to_string_pretty(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            model,
            overlay,
            walls,
            labels,
            title,
            output,
        } => render(&model, &overlay, walls, labels, title, &output),
    }
}

fn validate(path: &Path) -> Result<ExitCode> {
    let m = load_model(path)?;
    let violations = validate_model(&m);
    if violations.is_empty() {
        print(&format!("valid: {} fixed points", m.fixed_points().len()))?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut text = String::new();
    for v in &violations {
        text.push_str(&format!("violation: {v}\n"));
    }
    text.push_str(&format!("{} violations", violations.len()));
    print(&text)?;
    Ok(ExitCode::from(1))
}

fn betti(input: ModelInput) -> Result<ExitCode> {
    let m = load_model(&input.model)?;
    let xi = generator(&m, input.xi)?;
    let report = morse_report(&m, &xi)?;
    if input.json {
        let value = json!({
            "xi": strings(report.xi.xi()),
            "betti": report.betti,
            "sigma": report.sigma.iter().map(|(id, k)| json!({"id": id, "sigma": k})).collect::<Vec<_>>(),
            "warnings": report.warnings,
        });
        print(&serde_json::to_string_pretty(&value)?)?;
    } else {
        let mut text = format!("xi {}\nbetti {}\n", report.xi.xi(), list(&report.betti));
        for (id, k) in &report.sigma {
            text.push_str(&format!("sigma {id} {k}\n"));
        }
        for w in &report.warnings {
            text.push_str(&format!("warning: {w}\n"));
        }
        print(&text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn deform(input: ModelInput) -> Result<ExitCode> {
    let m = load_model(&input.model)?;
    let xi = generator(&m, input.xi)?;
    let report = deformation_report(&m, &xi)?;
    if input.json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "image": strings(&r.image),
                    "weight": strings(&r.weight),
                    "hits": r.hits.iter().map(|h| json!({"target": h.target, "parameter": h.parameter.to_string()})).collect::<Vec<_>>(),
                    "designated": r.designated.as_ref().map(|h| h.target.clone()),
                    "squared_distance": r.squared_distance.as_ref().map(Rational::to_string),
                    "distance": r.distance,
                })
            })
            .collect();
        let value = json!({"xi": strings(report.xi.xi()), "rows": rows});
        print(&serde_json::to_string_pretty(&value)?)?;
    } else {
        let mut text = format!(
            "xi {}\n{} deformation coordinates\n",
            report.xi.xi(),
            report.rows.len()
        );
        for r in &report.rows {
            let hits: Vec<String> = r
                .hits
                .iter()
                .map(|h| format!("{}@{}", h.target, h.parameter))
                .collect();
            let designated = r
                .designated
                .as_ref()
                .map_or("none".to_string(), |h| h.target.clone());
            let exact = r
                .squared_distance
                .as_ref()
                .map_or("-".to_string(), Rational::to_string);
            let approx = r.distance.map_or("-".to_string(), |d| format!("{d:.6}"));
            text.push_str(&format!(
                "row {}: weight {}, hits {}, designated {}, squared distance {}, distance {}\n",
                r.id,
                r.weight,
                hits.join(" "),
                designated,
                exact,
                approx
            ));
        }
        print(&text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn reflective_cmd(
    path: &Path,
    point: &QVector,
    delta: Option<&Path>,
    as_json: bool,
) -> Result<ExitCode> {
    let m = load_model(path)?;
    let rs = root_system(&m)?;
    let w = weyl_group(rs)?;
    let delta = dominant_polytope(&m, delta)?;
    let report = reflective(&delta, point, rs, &w)?;
    let reason = report.failure.as_ref().map(|f| f.to_string());
    if as_json {
        let value = json!({
            "point": strings(point),
            "reflective": report.reflective,
            "stabilizer_order": report.stabilizer_order,
            "faces": report.faces.iter().map(|f| f.iter().map(strings).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "reason": reason,
        });
        print(&serde_json::to_string_pretty(&value)?)?;
    } else {
        let mut text = format!(
            "point {point}\nreflective {}\nstabilizer order {}\n",
            yes(report.reflective),
            report.stabilizer_order
        );
        for f in &report.faces {
            let vs: Vec<String> = f.iter().map(QVector::to_string).collect();
            text.push_str(&format!("face {}\n", vs.join(" ")));
        }
        if let Some(reason) = reason {
            text.push_str(&format!("reason {reason}\n"));
        }
        print(&text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(path: &Path, delta: Option<&Path>, as_json: bool) -> Result<ExitCode> {
    let m = load_model(path)?;
    let rs = root_system(&m)?;
    let w = weyl_group(rs)?;
    let delta = dominant_polytope(&m, delta)?;
    let classes = classify_vertices(&delta, &m, rs, &w)?;
    if as_json {
        let rows: Vec<Value> = classes
            .iter()
            .map(|c| {
                json!({
                    "vertex": strings(&c.vertex),
                    "on_wall": c.on_wall,
                    "in_open_chamber": c.in_open_chamber,
                    "reflective": c.reflective,
                    "certified": c.certified,
                    "matched": c.matched,
                    "discrepancy": c.discrepancy,
                })
            })
            .collect();
        print(&serde_json::to_string_pretty(&rows)?)?;
    } else {
        let mut text = String::new();
        for c in &classes {
            let matched = if c.matched.is_empty() {
                "-".to_string()
            } else {
                c.matched.join(" ")
            };
            text.push_str(&format!(
                "vertex {}: wall {}, open chamber {}, reflective {}, certified {}, matched {}{}\n",
                c.vertex,
                yes(c.on_wall),
                yes(c.in_open_chamber),
                yes(c.reflective),
                yes(c.certified),
                matched,
                if c.discrepancy { ", DISCREPANCY" } else { "" }
            ));
        }
        print(&text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn render(
    path: &Path,
    overlays: &[std::path::PathBuf],
    walls: bool,
    labels: bool,
    title: Option<String>,
    output: &Output,
) -> Result<ExitCode> {
    let m = load_model(path)?;
    let mut layers = vec![Layer {
        polytope: m.image_hull()?,
        stroke: Stroke::Solid,
    }];
    for o in overlays {
        layers.push(Layer {
            polytope: load_model(o)?.image_hull()?,
            stroke: Stroke::Dashed,
        });
    }
    let markers = m
        .fixed_points()
        .iter()
        .map(|p| Marker {
            point: p.image().clone(),
            label: labels.then(|| p.id().to_string()),
        })
        .collect();
    let walls = if walls {
        root_system(&m)?.positive_roots().to_vec()
    } else {
        Vec::new()
    };
    let svg = render_svg(&Figure {
        title,
        layers,
        markers,
        walls,
    })?;
    emit(output, &svg)?;
    Ok(ExitCode::SUCCESS)
}
