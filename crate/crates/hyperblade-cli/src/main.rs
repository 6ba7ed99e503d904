//! `hyperblade` — command-line front end for exact computations with
//! weighted blade arrangements on hypersimplices.
//!
//! All verbs read JSON (a file path or `-` for standard input) and write
//! canonical JSON (sorted keys, terms in (|L|, L, J) order, rationals as
//! "p/q" strings) to standard output.
//!
//! Exit codes: 0 success / certified membership, 1 certified non-membership
//! or golden-replay mismatch, 2 input or usage error.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use hyperblade::building_blocks::dj_vertices;
use hyperblade::enumeration::{
    catalog_rays, catalog_summary, enumerate_dosps, enumerate_multisplits,
};
use hyperblade::heights::{all_ksubsets, cube_l, cube_r, eta, height_vector, kinematic_basis};
use hyperblade::json::{
    arrangement_from_json, arrangement_to_json, dosp_to_json, rat_to_string, tau_spec_from_json,
    vertex_vector_from_json, ArrangementJson, TauSpecJson, VertexVectorJson,
};
use hyperblade::tropical::{
    faces_report, is_in_x, is_in_y, is_in_z, pairs_not_ws_check, to_blades,
};
use hyperblade::{
    rat, GroundFrame, Subset, TauSpec, VertexVector, WeightedBladeArrangement,
};

#[derive(Parser)]
#[command(
    name = "hyperblade",
    about = "Exact computations with weighted blade arrangements on hypersimplices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the boundary operator to an arrangement (∂ by default, one face
    /// with --face, a single ∂_j with --j).
    Boundary {
        /// Arrangement JSON: a path, or `-` for standard input.
        input: String,
        /// Comma-separated face label L for the composed operator ∂_L.
        #[arg(long)]
        face: Option<String>,
        /// Single index j for ∂_j.
        #[arg(long)]
        j: Option<u32>,
    },
    /// Certify membership of a grade-0 arrangement in X, Y, or Z (default Z).
    /// Exits 0 on membership, 1 with a witness on certified non-membership.
    Check {
        /// Arrangement JSON: a path, or `-` for standard input.
        input: String,
        /// Check the weak-separation condition only.
        #[arg(long, conflicts_with_all = ["y", "z"])]
        x: bool,
        /// Check nonnegativity of the face weights only.
        #[arg(long, conflicts_with = "z")]
        y: bool,
        /// Check both conditions (the default).
        #[arg(long)]
        z: bool,
    },
    /// Map a height (Plücker) vector to its weighted blade arrangement.
    ToBlades {
        /// Vertex-vector JSON: a path, or `-` for standard input.
        input: String,
    },
    /// Per-face subdivision report of a certified arrangement: the supported
    /// pairs on every face of size k−2 and their decorated set partitions.
    Faces {
        /// Arrangement JSON: a path, or `-` for standard input.
        input: String,
    },
    /// Evaluate the planar-basis functionals η_J on a kinematic vector
    /// (all nonfrozen J by default, one subset with --j).
    Eta {
        /// Vertex-vector JSON: a path, or `-` for standard input.
        input: String,
        /// Comma-separated k-subset J to evaluate a single η_J.
        #[arg(long)]
        j: Option<String>,
    },
    /// Expand a τ building block into its weighted blade arrangement.
    Tau {
        /// τ spec JSON ({"J":…,"I_blocks":…,"L":…}): a path, or `-` for stdin.
        input: String,
        /// Ground-set size n.
        #[arg(long)]
        frame: u32,
    },
    /// Enumerate decorated ordered set partitions of type Δ_{k,n}
    /// (or the multi-split classes modulo rotation with --multisplits).
    Enumerate {
        #[arg(long)]
        k: u32,
        /// Ground-set size n.
        #[arg(long)]
        frame: u32,
        /// Restrict to partitions whose first block contains 1.
        #[arg(long)]
        anchored: bool,
        /// Enumerate nontrivial classes modulo cyclic block rotation instead.
        #[arg(long, conflicts_with = "anchored")]
        multisplits: bool,
    },
    /// Generate and certify the ray catalog of Z_{3,n} (6 ≤ n ≤ 9): one JSON
    /// line per entry, then a summary line.
    Catalog {
        #[arg(long)]
        n: u32,
    },
    /// Re-run the stored worked examples and diff against their goldens.
    /// Exits 1 if any example disagrees.
    ReplayPaperExamples,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))
    }
}

fn parse_arrangement(input: &str) -> Result<WeightedBladeArrangement> {
    let json: ArrangementJson =
        serde_json::from_str(&read_input(input)?).context("parsing arrangement JSON")?;
    Ok(arrangement_from_json(&json)?)
}

fn parse_vertex_vector(input: &str) -> Result<VertexVector> {
    let json: VertexVectorJson =
        serde_json::from_str(&read_input(input)?).context("parsing vertex-vector JSON")?;
    Ok(vertex_vector_from_json(&json)?)
}

fn parse_subset(csv: &str) -> Result<Subset> {
    let elements: Vec<u32> = csv
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().context("parsing subset element"))
        .collect::<Result<_>>()?;
    Ok(Subset::from_elements(&elements)?)
}

/// Serializes with sorted keys at every level (canonical output).
fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let canonical = serde_json::to_value(value)?;
    println!("{}", serde_json::to_string(&canonical)?);
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Boundary { input, face, j } => {
            let a = parse_arrangement(&input)?;
            let out = match (face, j) {
                (Some(_), Some(_)) => {
                    return Err(anyhow!("--face and --j are mutually exclusive"))
                }
                (Some(csv), None) => a.boundary_face(parse_subset(&csv)?)?,
                (None, Some(j)) => a.boundary_j(j)?,
                (None, None) => a.boundary()?,
            };
            print_json(&arrangement_to_json(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { input, x, y, z: _ } => {
            let a = parse_arrangement(&input)?;
            let (set, verdict) = if x {
                ("X", is_in_x(&a)?)
            } else if y {
                ("Y", is_in_y(&a)?)
            } else {
                ("Z", is_in_z(&a)?)
            };
            // Certificate shape: {"in_Z":bool, "witness":{…}}.
            let mut obj = serde_json::Map::new();
            obj.insert(
                format!("in_{set}"),
                serde_json::Value::Bool(verdict.is_ok()),
            );
            if let Err(w) = &verdict {
                obj.insert("witness".to_string(), serde_json::to_value(w)?);
            }
            print_json(&serde_json::Value::Object(obj))?;
            Ok(if verdict.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ToBlades { input } => {
            let p = parse_vertex_vector(&input)?;
            print_json(&arrangement_to_json(&to_blades(&p)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Faces { input } => {
            let a = parse_arrangement(&input)?;
            match faces_report(&a)? {
                Err(w) => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("in_Z".to_string(), serde_json::Value::Bool(false));
                    obj.insert("witness".to_string(), serde_json::to_value(&w)?);
                    print_json(&serde_json::Value::Object(obj))?;
                    Ok(ExitCode::from(1))
                }
                Ok(report) => {
                    #[derive(Serialize)]
                    struct FaceEntry {
                        #[serde(rename = "L")]
                        face: Vec<u32>,
                        pairs: Vec<Vec<u32>>,
                        dosps: Vec<hyperblade::json::DospJson>,
                    }
                    let entries: Vec<FaceEntry> = report
                        .iter()
                        .map(|(l, items)| FaceEntry {
                            face: l.elements(),
                            pairs: items.iter().map(|(p, _)| p.elements()).collect(),
                            dosps: items.iter().map(|(_, d)| dosp_to_json(d)).collect(),
                        })
                        .collect();
                    print_json(&entries)?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Eta { input, j } => {
            let v = parse_vertex_vector(&input)?;
            #[derive(Serialize)]
            struct EtaValue {
                #[serde(rename = "J")]
                j: Vec<u32>,
                v: String,
            }
            let targets: Vec<Subset> = match j {
                Some(csv) => vec![parse_subset(&csv)?],
                None => {
                    let frame = GroundFrame::ambient(v.n())?;
                    all_ksubsets(v.k(), v.n())
                        .into_iter()
                        .filter(|&j| !frame.is_frozen(j).unwrap_or(true))
                        .collect()
                }
            };
            let values: Vec<EtaValue> = targets
                .into_iter()
                .map(|j| {
                    Ok(EtaValue {
                        j: j.elements(),
                        v: rat_to_string(&eta(&v, j)?),
                    })
                })
                .collect::<Result<_>>()?;
            print_json(&values)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { input, frame } => {
            let json: TauSpecJson =
                serde_json::from_str(&read_input(&input)?).context("parsing tau spec JSON")?;
            let spec = tau_spec_from_json(frame, &json)?;
            let k = spec.source().len() + spec.frame().removed().len();
            print_json(&arrangement_to_json(&spec.tau(k)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            k,
            frame,
            anchored,
            multisplits,
        } => {
            let items = if multisplits {
                enumerate_multisplits(k, frame)?
            } else {
                enumerate_dosps(k, frame, anchored)?
            };
            #[derive(Serialize)]
            struct Enumeration {
                count: usize,
                items: Vec<hyperblade::json::DospJson>,
            }
            print_json(&Enumeration {
                count: items.len(),
                items: items.iter().map(dosp_to_json).collect(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { n } => {
            let catalog = catalog_rays(n)?;
            #[derive(Serialize)]
            struct CatalogEntry {
                arrangement: ArrangementJson,
                orbit_size: usize,
                tag: String,
            }
            for e in &catalog.entries {
                print_json(&CatalogEntry {
                    arrangement: arrangement_to_json(&e.arrangement),
                    orbit_size: e.orbit_size,
                    tag: e.tag.clone(),
                })?;
            }
            #[derive(Serialize)]
            struct Summary {
                n: u32,
                count: usize,
                classes: std::collections::BTreeMap<String, usize>,
            }
            print_json(&Summary {
                n,
                count: catalog.entries.len(),
                classes: catalog_summary(&catalog),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ReplayPaperExamples => replay_examples(),
    }
}

// ---------------------------------------------------------------------------
// Golden replay
// ---------------------------------------------------------------------------

fn sub(e: &[u32]) -> Subset {
    Subset::from_elements(e).expect("golden subset literal")
}

fn grade0(k: u32, n: u32, terms: &[(&[u32], i64)]) -> WeightedBladeArrangement {
    let mut a = WeightedBladeArrangement::zero(k, n);
    for (j, c) in terms {
        a.add_term(Subset::EMPTY, sub(j), rat(*c)).unwrap();
    }
    a
}

fn graded(k: u32, n: u32, terms: &[(&[u32], &[u32], i64)]) -> WeightedBladeArrangement {
    let mut a = WeightedBladeArrangement::zero(k, n);
    for (l, j, c) in terms {
        a.add_term(sub(l), sub(j), rat(*c)).unwrap();
    }
    a
}

/// Each stored example recomputes a worked quantity and diffs it against the
/// golden value. Every golden was pinned by at least two independent
/// computation routes.
fn replay_examples() -> Result<ExitCode> {
    let mut failures = 0usize;
    let mut run = |name: &str, outcome: Result<bool>| match outcome {
        Ok(true) => println!("replay {name}: ok"),
        Ok(false) => {
            failures += 1;
            println!("replay {name}: MISMATCH");
        }
        Err(e) => {
            failures += 1;
            println!("replay {name}: ERROR ({e:#})");
        }
    };

    run("cyclic-intervals-face-frame", (|| {
        let frame = GroundFrame::new(8, sub(&[1]))?;
        Ok(frame.cyclic_intervals(sub(&[4, 5, 6]))? == vec![vec![4, 5, 6]])
    })());

    run("interlaced-complements-2578", (|| {
        let frame = GroundFrame::ambient(9)?;
        Ok(frame.interlaced_complements(sub(&[2, 5, 7, 8]))?
            == vec![vec![9, 1], vec![3, 4], vec![6]])
    })());

    run("frozen-single-interval", (|| {
        let frame = GroundFrame::new(8, sub(&[1]))?;
        Ok(frame.is_frozen(sub(&[4, 5, 6]))?)
    })());

    run("boundary-d2-beta-1456", (|| {
        let b = WeightedBladeArrangement::grade0_blade(4, 8, sub(&[1, 4, 5, 6]))?;
        Ok(b.boundary_j(2)? == graded(4, 8, &[(&[2], &[1, 5, 6], 1)]))
    })());

    run("boundary-d1-beta-1456", (|| {
        let b = WeightedBladeArrangement::grade0_blade(4, 8, sub(&[1, 4, 5, 6]))?;
        Ok(b.boundary_j(1)?.is_zero())
    })());

    let w37 = grade0(
        3,
        7,
        &[(&[2, 4, 7], -1), (&[1, 2, 4], 1), (&[2, 5, 7], 1), (&[3, 4, 7], 1)],
    );

    run("boundary-w37-nine-terms", (|| {
        // Corrected golden: the terms at faces {3} and {5} are β^{(3)}_{47}
        // and β^{(5)}_{27}.
        let expected = graded(
            3,
            7,
            &[
                (&[1], &[2, 4], 1),
                (&[1], &[5, 7], 1),
                (&[2], &[1, 4], 1),
                (&[2], &[5, 7], 1),
                (&[3], &[4, 7], 1),
                (&[4], &[3, 7], 1),
                (&[5], &[2, 7], 1),
                (&[6], &[2, 5], 1),
                (&[7], &[2, 5], 1),
            ],
        );
        Ok(w37.boundary()? == expected)
    })());

    run("w37-support-face-1", (|| {
        Ok(w37.support_on_face(sub(&[1]))? == vec![sub(&[2, 4]), sub(&[5, 7])])
    })());

    run("w37-in-z", (|| Ok(is_in_z(&w37)?.is_ok()))());

    run("w37-face-1-dosps", (|| {
        let report = match faces_report(&w37)? {
            Ok(r) => r,
            Err(_) => return Ok(false),
        };
        let entries = match report.get(&sub(&[1])) {
            Some(e) => e,
            None => return Ok(false),
        };
        let dosps: Vec<_> = entries.iter().map(|(_, d)| d.clone()).collect();
        let frame = GroundFrame::new(7, sub(&[1]))?;
        let want = vec![
            hyperblade::arrangement::dosp_from_vertex(&frame, sub(&[2, 4]))?,
            hyperblade::arrangement::dosp_from_vertex(&frame, sub(&[5, 7]))?,
        ];
        Ok(dosps == want
            && want[0].blocks == vec![vec![3, 4], vec![5, 6, 7, 2]]
            && want[1].blocks == vec![vec![2, 3, 4, 5], vec![6, 7]])
    })());

    let tau_12 = TauSpec::new(
        GroundFrame::ambient(12)?,
        sub(&[1, 3, 5, 7, 9]),
        vec![
            Subset::singleton(2),
            Subset::singleton(4),
            Subset::singleton(6),
            Subset::singleton(8),
            Subset::singleton(10),
        ],
    )?;

    run("tau-5-12-expansion", (|| {
        let expected = grade0(
            5,
            12,
            &[
                (&[1, 3, 5, 7, 9], -3),
                (&[2, 3, 5, 7, 9], 1),
                (&[1, 4, 5, 7, 9], 1),
                (&[1, 3, 6, 7, 9], 1),
                (&[1, 3, 5, 8, 9], 1),
                (&[1, 3, 5, 7, 10], 1),
            ],
        );
        Ok(tau_12.tau(5)? == expected)
    })());

    run("tau-5-12-d1", (|| {
        let expected = graded(
            5,
            12,
            &[
                (&[1], &[3, 5, 7, 9], -2),
                (&[1], &[3, 5, 7, 10], 1),
                (&[1], &[3, 5, 8, 9], 1),
                (&[1], &[3, 6, 7, 9], 1),
                (&[1], &[4, 5, 7, 9], 1),
            ],
        );
        Ok(tau_12.tau(5)?.boundary_j(1)? == expected)
    })());

    run("tau-5-12-d6-11", (|| {
        let expected = graded(
            5,
            12,
            &[
                (&[6, 11], &[3, 5, 9], -1),
                (&[6, 11], &[3, 5, 10], 1),
                (&[6, 11], &[3, 7, 9], 1),
                (&[6, 11], &[4, 5, 9], 1),
            ],
        );
        Ok(tau_12.tau(5)?.boundary_face(sub(&[6, 11]))? == expected)
    })());

    run("tau-5-12-d4-7-11", (|| {
        let expected = graded(
            5,
            12,
            &[(&[4, 7, 11], &[3, 10], 1), (&[4, 7, 11], &[5, 9], 1)],
        );
        Ok(tau_12.tau(5)?.boundary_face(sub(&[4, 7, 11]))? == expected)
    })());

    run("tau-246-135-bipyramid-generator", (|| {
        let spec = TauSpec::new(
            GroundFrame::ambient(6)?,
            sub(&[2, 4, 6]),
            vec![Subset::singleton(3), Subset::singleton(5), Subset::singleton(1)],
        )?;
        let expected = grade0(
            3,
            6,
            &[(&[2, 4, 6], -1), (&[3, 4, 6], 1), (&[2, 5, 6], 1), (&[1, 2, 4], 1)],
        );
        Ok(spec.tau(3)? == expected && is_in_z(&expected)?.is_ok())
    })());

    run("dj-count-4-9", (|| {
        Ok(dj_vertices(&GroundFrame::ambient(9)?, sub(&[2, 5, 7, 8]))?.len() == 10)
    })());

    run("dosp-246", (|| {
        let d = hyperblade::arrangement::dosp_from_vertex(&GroundFrame::ambient(6)?, sub(&[2, 4, 6]))?;
        Ok(d.blocks == vec![vec![1, 2], vec![3, 4], vec![5, 6]] && d.weights == vec![1, 1, 1])
    })());

    run("dosp-25-face-6", (|| {
        let d = hyperblade::arrangement::dosp_from_vertex(
            &GroundFrame::new(6, sub(&[6]))?,
            sub(&[2, 5]),
        )?;
        Ok(d.blocks == vec![vec![1, 2], vec![3, 4, 5]] && d.weights == vec![1, 1])
    })());

    run("plate-123-2-456-1", (|| {
        let d = hyperblade::arrangement::DecoratedOsp::new(
            vec![vec![1, 2, 3], vec![4, 5, 6]],
            vec![2, 1],
        )?;
        let p = hyperblade::arrangement::plate_system(&d);
        Ok(p.inequalities == vec![(sub(&[1, 2, 3]), 2)])
    })());

    run("heights-satisfy-octahedron-relations-3-6", (|| {
        for j in all_ksubsets(3, 6) {
            if hyperblade::tropical::is_pos_plucker(&height_vector(3, 6, j)?)?.is_err() {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    run("to-blades-of-height-is-single-blade", (|| {
        let h = height_vector(3, 6, sub(&[2, 4, 6]))?;
        Ok(to_blades(&h)? == grade0(3, 6, &[(&[2, 4, 6], 1)]))
    })());

    run("frozen-eta-vanishes", (|| {
        // η of a frozen vertex is identically zero on the kinematic space.
        let frame = GroundFrame::ambient(6)?;
        for w in kinematic_basis(3, 6)? {
            for j in all_ksubsets(3, 6) {
                if frame.is_frozen(j)? && eta(&w, j)? != rat(0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })());

    run("cube-inversion-2-4", (|| {
        // Both inversion identities at (2,4), plus the worked signed-sum
        // entries: 0 at e^{12} and −1 at e^{24}.
        let frame = GroundFrame::ambient(4)?;
        for j in all_ksubsets(2, 4) {
            if frame.is_frozen(j)? {
                continue;
            }
            let e_j = VertexVector::basis(2, 4, j)?;
            if cube_r(&cube_l(&e_j)?)? != e_j {
                return Ok(false);
            }
        }
        let r = |j: &[u32]| -> Result<VertexVector> {
            Ok(cube_r(&VertexVector::basis(2, 4, sub(j))?)?)
        };
        let signed_sum = r(&[2, 4])?
            .add(&r(&[1, 4])?.scale(&rat(-1)))?
            .add(&r(&[2, 3])?.scale(&rat(-1)))?
            .add(&r(&[1, 3])?)?;
        Ok(signed_sum.get(sub(&[1, 2])) == rat(0) && signed_sum.get(sub(&[2, 4])) == rat(-1))
    })());

    run("face-6-weight-table-3-6", (|| {
        // The ∂_6 face-weight table of a generic combination, instantiated
        // at concrete integer coefficients.
        let coeffs: Vec<(&[u32], i64)> = vec![
            (&[1, 3, 6], 2),
            (&[1, 4, 6], 3),
            (&[1, 2, 4], 5),
            (&[2, 4, 6], 7),
            (&[1, 2, 5], 11),
            (&[2, 5, 6], 13),
            (&[1, 3, 5], 17),
            (&[2, 3, 5], 19),
            (&[3, 5, 6], 23),
        ];
        let a = grade0(3, 6, &coeffs);
        let t = hyperblade::tropical::face_weights(&a, sub(&[6]))?;
        Ok(t.weights[&sub(&[1, 3])] == rat(2)
            && t.weights[&sub(&[1, 4])] == rat(3)
            && t.weights[&sub(&[2, 4])] == rat(5 + 7)
            && t.weights[&sub(&[2, 5])] == rat(11 + 13)
            && t.weights[&sub(&[3, 5])] == rat(17 + 19 + 23))
    })());

    run("pairs-not-ws-face-6", (|| {
        // Both face-6 minimum conditions hold for a Z member supported
        // there.
        let a = grade0(3, 6, &[(&[1, 2, 4], 1), (&[2, 4, 6], 1)]);
        Ok(is_in_z(&a)?.is_ok() && pairs_not_ws_check(&a, sub(&[6]))?)
    })());

    run("bipyramid-cancellation", (|| {
        let single = grade0(3, 6, &[(&[2, 4, 6], 1)]);
        let tripod = grade0(
            3,
            6,
            &[(&[2, 4, 6], -1), (&[1, 2, 4], 1), (&[3, 4, 6], 1), (&[2, 5, 6], 1)],
        );
        let sum = single.add(&tripod)?;
        Ok(sum == grade0(3, 6, &[(&[1, 2, 4], 1), (&[3, 4, 6], 1), (&[2, 5, 6], 1)])
            && is_in_z(&single)?.is_ok()
            && is_in_z(&tripod)?.is_ok()
            && is_in_z(&sum)?.is_ok())
    })());

    if failures == 0 {
        println!("replay: all examples match");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("replay: {failures} example(s) disagree");
        Ok(ExitCode::from(1))
    }
}
