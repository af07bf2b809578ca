//! Command-line front end: every library operation behind a subcommand,
//! with one machine-readable JSON document per invocation on stdout.
//!
//! Conventions: vectors are 4 comma-separated integers, matrices 16
//! (row-major), 2×2 matrices 4; all integers in the output document are
//! decimal strings so consumers limited to 64-bit numbers never overflow.
//! Exit code 0 on success, 1 on a domain error (with a structured error
//! record), 2 on a usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fm_lattice::lattice::{euler_chi, pairing, MukaiVector};
use fm_lattice::parse::{
    parse_fibration, parse_generator_spec, parse_int, parse_mat4, parse_type_label, parse_vector,
};
use fm_lattice::reduction::{
    default_bfs_cap, orbit_bfs_oracle_with_cap, reduce_vector, ReductionReport,
};
use fm_lattice::surface::{all_types, lookup_type, SurfaceType};
use fm_lattice::transform::{
    kron_factor, rfm_matrix, shift_matrix, tensor_group_member, twist_matrix, GeneratorSpec, Mat2,
    Mat4,
};
use fm_lattice::{CharConstraint, Error, Int};

#[derive(Parser)]
#[command(
    name = "fm-lattice",
    version,
    about = "Exact-integer lattice engine for bielliptic-surface autoequivalences"
)]
struct Cli {
    /// Render human-readable text instead of the JSON document.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the 13-row classification table.
    Types,
    /// Show the classification row for a label and characteristic.
    Info {
        /// Type label, e.g. 2,1 or 2,mu2.
        label: String,
        /// Base-field characteristic (0 or a prime).
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Mukai pairing of two vectors.
    Pair {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Euler form of two vectors.
    Chi {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Apply a 4×4 matrix (16 integers) or a generator spec (tag:params)
    /// to a vector.
    Apply {
        /// 16 comma-separated integers, or twist:U1,U2 / shift:N /
        /// rfm1:C,A,D,B[,S] / rfm2:C,A,D,B[,S].
        #[arg(allow_hyphen_values = true)]
        operator: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Surface type, required when the operator is an rfm spec.
        #[arg(long = "type")]
        type_label: Option<String>,
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// Matrix of tensoring with O((u1/λ1)F1 + (u2/λ2)F2).
    Twist {
        #[arg(allow_hyphen_values = true)]
        u1: String,
        #[arg(allow_hyphen_values = true)]
        u2: String,
    },
    /// Matrix of a relative Fourier-Mukai transform with fiber matrix
    /// [[c,a],[d,b]].
    Rfm {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Shear of the off-fibration factor.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
        /// Fibration the transform runs along: 1 or 2.
        #[arg(long)]
        fibration: String,
        #[arg(long = "type")]
        type_label: String,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Factor a 4×4 matrix as a Kronecker product of unimodular 2×2
    /// matrices, if possible.
    Factor {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Test membership in {A1 ⊗ A2 : Ai ∈ Γ(λi)}.
    Member {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long = "type")]
        type_label: String,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Factor a vector into a word of generators sending the point class
    /// to it.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long = "type")]
        type_label: String,
        #[arg(long = "char")]
        characteristic: u64,
    },
    /// Breadth-first orbit search for a witness word. One-sided: false may
    /// mean the bounds were too small. FM_LATTICE_BFS_CAP overrides the
    /// entry-magnitude cap (default 10 × param-bound).
    OrbitOracle {
        #[arg(allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        word_len: u32,
        #[arg(long)]
        param_bound: String,
        #[arg(long = "type")]
        type_label: String,
        #[arg(long = "char")]
        characteristic: u64,
    },
}

fn usage_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

fn istr(i: Int) -> Value {
    Value::String(i.to_string())
}

fn vector_value(v: &MukaiVector) -> Value {
    Value::Array(v.as_array().iter().map(|&e| istr(e)).collect())
}

fn mat2_value(m: &Mat2) -> Value {
    Value::Array(m.0.iter().map(|&e| istr(e)).collect())
}

fn mat4_value(m: &Mat4) -> Value {
    Value::Array(m.0.iter().map(|&e| istr(e)).collect())
}

fn char_value(c: &CharConstraint) -> Value {
    match *c {
        CharConstraint::Equal(p) => json!({"op": "eq", "primes": [p.to_string()]}),
        CharConstraint::NotEqual(p) => json!({"op": "ne", "primes": [p.to_string()]}),
        CharConstraint::NotEqualEither(p, q) => {
            json!({"op": "ne", "primes": [p.to_string(), q.to_string()]})
        }
    }
}

fn type_value(st: &SurfaceType) -> Value {
    json!({
        "type_label": st.label.as_str(),
        "char_constraint": char_value(&st.char_constraint),
        "g0_order": istr(st.g0_order),
        "h_rank": istr(st.h_rank),
        "ord_omega": istr(st.ord_omega),
        "lambda1": istr(st.lambda1),
        "lambda2": istr(st.lambda2),
        "f1_dot_f2": istr(st.f1_dot_f2),
        "multiplicities": st.multiplicities.iter()
            .map(|variant| Value::Array(variant.iter().map(|&m| istr(m)).collect()))
            .collect::<Vec<_>>(),
        "mu": istr(st.mu),
    })
}

fn spec_value(g: &GeneratorSpec) -> Value {
    match *g {
        GeneratorSpec::Twist { u1, u2 } => {
            json!({"kind": "twist", "u1": istr(u1), "u2": istr(u2)})
        }
        GeneratorSpec::Shift { n } => json!({"kind": "shift", "n": istr(n)}),
        GeneratorSpec::Rfm1 { c, a, d, b, s } => json!({
            "kind": "rfm1", "c": istr(c), "a": istr(a), "d": istr(d), "b": istr(b), "s": istr(s)
        }),
        GeneratorSpec::Rfm2 { c, a, d, b, s } => json!({
            "kind": "rfm2", "c": istr(c), "a": istr(a), "d": istr(d), "b": istr(b), "s": istr(s)
        }),
    }
}

fn report_value(report: &ReductionReport) -> Value {
    json!({
        "input": vector_value(&report.input),
        "word": report.word.factors().iter().map(spec_value).collect::<Vec<_>>(),
        "trace": report.trace.iter().map(vector_value).collect::<Vec<_>>(),
        "matrix": mat4_value(report.word.matrix()),
        "verified": report.verified,
    })
}

fn lookup(label_text: &str, characteristic: u64) -> Result<&'static SurfaceType, Error> {
    let label = match parse_type_label(label_text) {
        Ok(label) => label,
        Err(e) => usage_error(&e.to_string()),
    };
    lookup_type(label, characteristic)
}

fn pretty_report(report: &ReductionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("input    {}\n", report.input));
    if report.word.is_empty() {
        out.push_str("word     (empty)\n");
    } else {
        for (i, (factor, stop)) in report
            .word
            .factors()
            .iter()
            .zip(report.trace.iter())
            .enumerate()
        {
            out.push_str(&format!("word[{i}]  {factor}  ->  {stop}\n"));
        }
    }
    out.push_str(&format!("verified {}", report.verified));
    out
}

struct Outcome {
    json: Value,
    pretty: String,
}

fn ok(json: Value, pretty: String) -> Result<Outcome, Error> {
    Ok(Outcome { json, pretty })
}

/// Parse a payload integer, treating malformed text as a usage error.
fn int_arg(text: &str) -> Int {
    match parse_int(text) {
        Ok(i) => i,
        Err(e) => usage_error(&e.to_string()),
    }
}

fn vector_arg(text: &str) -> MukaiVector {
    match parse_vector(text) {
        Ok(v) => v,
        Err(e) => usage_error(&e.to_string()),
    }
}

fn mat4_arg(text: &str) -> Mat4 {
    match parse_mat4(text) {
        Ok(m) => m,
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run(command: &Command) -> (&'static str, Value, Result<Outcome, Error>) {
    match command {
        Command::Types => {
            let rows: Vec<Value> = all_types().iter().map(type_value).collect();
            let mut pretty =
                String::from("type    char   ord(ω)  λ1  λ2  F1·F2  μ  multiplicities\n");
            for st in all_types() {
                pretty.push_str(&format!(
                    "{:<7} {:<6} {:<7} {:<3} {:<3} {:<6} {:<2} {}\n",
                    st.label.as_str(),
                    st.char_constraint.to_string(),
                    st.ord_omega,
                    st.lambda1,
                    st.lambda2,
                    st.f1_dot_f2,
                    st.mu,
                    st.multiplicities
                        .iter()
                        .map(|v| format!("{v:?}"))
                        .collect::<Vec<_>>()
                        .join(" or ")
                ));
            }
            (
                "types",
                Value::Null,
                ok(Value::Array(rows), pretty.trim_end().to_string()),
            )
        }
        Command::Info {
            label,
            characteristic,
        } => {
            let input = json!({"label": label, "char": characteristic.to_string()});
            let result = lookup(label, *characteristic).map(|st| Outcome {
                json: type_value(st),
                pretty: format!(
                    "type ({}): char {}, ord(ω) = {}, λ1 = {}, λ2 = {}, F1·F2 = {}, μ = {}",
                    st.label,
                    st.char_constraint,
                    st.ord_omega,
                    st.lambda1,
                    st.lambda2,
                    st.f1_dot_f2,
                    st.mu
                ),
            });
            ("info", input, result)
        }
        Command::Pair { v, w } => {
            let (x, y) = (vector_arg(v), vector_arg(w));
            let input = json!({"v": vector_value(&x), "w": vector_value(&y)});
            let p = pairing(&x, &y);
            ("pair", input, ok(istr(p), p.to_string()))
        }
        Command::Chi { v, w } => {
            let (x, y) = (vector_arg(v), vector_arg(w));
            let input = json!({"v": vector_value(&x), "w": vector_value(&y)});
            let chi = euler_chi(&x, &y);
            ("chi", input, ok(istr(chi), chi.to_string()))
        }
        Command::Apply {
            operator,
            vector,
            type_label,
            characteristic,
        } => {
            let v = vector_arg(vector);
            if operator.contains(':') {
                let spec = match parse_generator_spec(operator) {
                    Ok(s) => s,
                    Err(e) => usage_error(&e.to_string()),
                };
                let input = json!({"spec": spec_value(&spec), "vector": vector_value(&v)});
                let matrix = match spec {
                    GeneratorSpec::Twist { u1, u2 } => Ok(twist_matrix(u1, u2)),
                    GeneratorSpec::Shift { n } => Ok(shift_matrix(n)),
                    _ => {
                        let (Some(label), Some(ch)) = (type_label, characteristic) else {
                            usage_error("an rfm operator needs --type and --char");
                        };
                        match lookup(label, *ch) {
                            Ok(st) => rfm_matrix(&spec, st),
                            Err(e) => Err(e),
                        }
                    }
                };
                let result = matrix.map(|m| {
                    let image = m.apply(&v);
                    Outcome {
                        json: vector_value(&image),
                        pretty: image.to_string(),
                    }
                });
                ("apply", input, result)
            } else {
                let m = mat4_arg(operator);
                let input = json!({"matrix": mat4_value(&m), "vector": vector_value(&v)});
                let image = m.apply(&v);
                ("apply", input, ok(vector_value(&image), image.to_string()))
            }
        }
        Command::Twist { u1, u2 } => {
            let (u1, u2) = (int_arg(u1), int_arg(u2));
            let input = json!({"u1": istr(u1), "u2": istr(u2)});
            let m = twist_matrix(u1, u2);
            ("twist", input, ok(mat4_value(&m), m.to_string()))
        }
        Command::Rfm {
            c,
            a,
            d,
            b,
            s,
            fibration,
            type_label,
            characteristic,
        } => {
            let (c, a, d, b, s) = (int_arg(c), int_arg(a), int_arg(d), int_arg(b), int_arg(s));
            let fibration = match parse_fibration(fibration) {
                Ok(f) => f,
                Err(e) => usage_error(&e.to_string()),
            };
            let input = json!({
                "c": istr(c), "a": istr(a), "d": istr(d), "b": istr(b), "s": istr(s),
                "fibration": fibration.to_string(),
                "type": type_label, "char": characteristic.to_string(),
            });
            let spec = match fibration {
                fm_lattice::Fibration::One => GeneratorSpec::Rfm1 { c, a, d, b, s },
                fm_lattice::Fibration::Two => GeneratorSpec::Rfm2 { c, a, d, b, s },
            };
            let result = lookup(type_label, *characteristic)
                .and_then(|st| rfm_matrix(&spec, st))
                .map(|m| Outcome {
                    json: mat4_value(&m),
                    pretty: m.to_string(),
                });
            ("rfm", input, result)
        }
        Command::Factor { matrix } => {
            let m = mat4_arg(matrix);
            let input = json!({"matrix": mat4_value(&m)});
            let outcome = match kron_factor(&m) {
                Some((a1, a2)) => Outcome {
                    json: json!({"a1": mat2_value(&a1), "a2": mat2_value(&a2)}),
                    pretty: format!("A1 = {a1}\nA2 = {a2}"),
                },
                None => Outcome {
                    json: Value::Null,
                    pretty: "not a Kronecker product of unimodular factors".to_string(),
                },
            };
            ("factor", input, Ok(outcome))
        }
        Command::Member {
            matrix,
            type_label,
            characteristic,
        } => {
            let m = mat4_arg(matrix);
            let input = json!({
                "matrix": mat4_value(&m),
                "type": type_label, "char": characteristic.to_string(),
            });
            let result = lookup(type_label, *characteristic).map(|st| {
                let member = tensor_group_member(&m, st);
                Outcome {
                    json: Value::Bool(member),
                    pretty: member.to_string(),
                }
            });
            ("member", input, result)
        }
        Command::Reduce {
            vector,
            type_label,
            characteristic,
        } => {
            let v = vector_arg(vector);
            let input = json!({
                "vector": vector_value(&v),
                "type": type_label, "char": characteristic.to_string(),
            });
            let result = lookup(type_label, *characteristic)
                .and_then(|st| reduce_vector(&v, st))
                .map(|report| Outcome {
                    json: report_value(&report),
                    pretty: pretty_report(&report),
                });
            ("reduce", input, result)
        }
        Command::OrbitOracle {
            vector,
            word_len,
            param_bound,
            type_label,
            characteristic,
        } => {
            let v = vector_arg(vector);
            let bound = int_arg(param_bound);
            if *word_len < 1 || bound < 1 {
                usage_error("--word-len and --param-bound must be at least 1");
            }
            let cap = match std::env::var("FM_LATTICE_BFS_CAP") {
                Err(_) => default_bfs_cap(bound),
                Ok(text) => match parse_int(&text) {
                    Ok(cap) if cap >= 0 => cap,
                    _ => usage_error("FM_LATTICE_BFS_CAP must be a non-negative integer"),
                },
            };
            let input = json!({
                "vector": vector_value(&v),
                "word_len": word_len.to_string(),
                "param_bound": istr(bound),
                "cap": istr(cap),
                "type": type_label, "char": characteristic.to_string(),
            });
            let result = lookup(type_label, *characteristic).map(|st| {
                let reachable = orbit_bfs_oracle_with_cap(&v, st, *word_len, bound, cap);
                Outcome {
                    json: Value::Bool(reachable),
                    pretty: reachable.to_string(),
                }
            });
            ("orbit-oracle", input, result)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, input, result) = run(&cli.command);
    match result {
        Ok(outcome) => {
            if cli.pretty {
                println!("{}", outcome.pretty);
            } else {
                let doc = json!({"command": command, "input": input, "result": outcome.json});
                println!("{doc}");
            }
            ExitCode::SUCCESS
        }
        Err(error) => {
            if cli.pretty {
                println!("error [{}]: {}", error.code(), error);
            } else {
                let doc = json!({
                    "command": command,
                    "input": input,
                    "error": {"code": error.code(), "message": error.to_string()},
                });
                println!("{doc}");
            }
            ExitCode::from(1)
        }
    }
}
