//! skewlie: exact-arithmetic gadgets, skew-pencil invariants and
//! nilpotent Lie algebra classification from the command line.
//!
//! Exit codes: 0 success / positive decision, 1 negative decision,
//! 2 computational error, 64 usage error, 65 malformed input.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use skewlie::gadgets::{build_t, intertwiner_similarity_with_budget, witness_from_similarity};
use skewlie::json as sj;
use skewlie::oracles::{brute_congruent, brute_orbit_iso, brute_similar, EnumerationBudget};
use skewlie::pencil::{emit_canonical_pair, pairs_congruent, pencil_invariants, SkewPair};
use skewlie::tuples::apply_congruence;
use skewlie::{
    adjoin_identity, check_semialgebra, emit_canonical_algebra, lie_classify, lie_isomorphic,
    pgroup_presentation, semialgebra_from_tuple, tuple_from_semialgebra, EpsilonSignature, Error,
    FieldSpec, Matrix, MatrixPair, MatrixTuple,
};

#[derive(Parser)]
#[command(name = "skewlie", version, about = "exact-arithmetic matrix pencils, wildness gadgets and nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// base field: q (rationals) or fp (finite)
    #[arg(long, default_value = "q")]
    field: String,
    /// characteristic for --field fp
    #[arg(long)]
    p: Option<u64>,
    /// extension degree for --field fp (needs --modulus for k > 1)
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// monic irreducible modulus as comma-separated coefficients c0,..,ck
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<FieldSpec, Error> {
        match self.field.as_str() {
            "q" => Ok(FieldSpec::rationals()),
            "fp" => {
                let p = self.p.ok_or_else(|| Error::Parse("--field fp needs --p".into()))?;
                match &self.modulus {
                    None if self.k == 1 => FieldSpec::prime_field(p),
                    None => Err(Error::Parse("extension fields need --modulus".into())),
                    Some(m) => {
                        let coeffs: Vec<u64> = m
                            .split(',')
                            .map(|c| c.trim().parse().map_err(|_| Error::Parse("bad modulus coefficient".into())))
                            .collect::<Result<_, _>>()?;
                        FieldSpec::finite_field(p, coeffs)
                    }
                }
            }
            other => Err(Error::Parse(format!("unknown field {other:?}; use q or fp"))),
        }
    }
}

#[derive(Args, Clone)]
struct InputArg {
    /// input path; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct FormatArg {
    /// report format: json or text
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Wildness gadget triples from matrix pairs
    Gadget {
        #[command(subcommand)]
        action: GadgetCmd,
    },
    /// Simultaneous similarity of matrix pairs
    Pair {
        #[command(subcommand)]
        action: PairCmd,
    },
    /// Skew-symmetric pencil invariants and canonical pairs
    Pencil {
        #[command(subcommand)]
        action: PencilCmd,
    },
    /// Two-step nilpotent Lie algebras with small commutator
    Lie {
        #[command(subcommand)]
        action: LieCmd,
    },
    /// Structure-constant semialgebras
    Alg {
        #[command(subcommand)]
        action: AlgCmd,
    },
    /// Finite p-group presentations from skew tuples
    Pgroup {
        #[command(subcommand)]
        action: PgroupCmd,
    },
    /// Brute-force ground-truth deciders
    Oracle {
        #[command(subcommand)]
        action: OracleCmd,
    },
    /// Run the acceptance checks at reduced sizes
    Selftest,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Build the triple T_eps(A,B) from a two-member tuple
    Build {
        /// epsilon signature e1,e2,e3 (e1, e2 nonzero)
        #[arg(long)]
        eps: String,
        #[command(flatten)]
        input: InputArg,
    },
    /// Congruence witness R = diag((S^T)^-1 x4, S x4) from a matrix S
    Witness {
        #[command(flatten)]
        input: InputArg,
    },
    /// Verify R^T T_eps(P1) R = T_eps(P2)
    Verify {
        #[arg(long)]
        eps: String,
        /// two pair files and one witness matrix file
        files: Vec<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum PairCmd {
    /// Decide simultaneous similarity via the intertwiner space
    Similar {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum PencilCmd {
    /// Canonical congruence invariants of a skew pair
    Canon {
        #[command(flatten)]
        input: InputArg,
        /// also print the emitted canonical pair
        #[arg(long)]
        emit: bool,
    },
    /// Decide congruence of two skew pairs
    Congruent {
        files: Vec<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Canonical pair from an invariant record
    Emit {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum LieCmd {
    /// Canonical label of a two-step nilpotent Lie algebra
    Classify {
        #[command(flatten)]
        input: InputArg,
    },
    /// Decide isomorphism of two algebras
    Iso {
        files: Vec<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Canonical algebra carrying a label
    Emit {
        #[command(flatten)]
        input: InputArg,
        /// base field for labels that do not carry one (dim-1 labels)
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Report cube-zero / square dimension / symmetry of a table
    Check {
        #[command(flatten)]
        input: InputArg,
    },
    /// Adjoin an identity to a commutative table with R^3 = 0
    Adjoin1 {
        #[command(flatten)]
        input: InputArg,
    },
    /// Semialgebra of a symmetric or skew tuple
    Encode {
        #[command(flatten)]
        input: InputArg,
    },
    /// Recover the tuple and basis change from a table
    Decode {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum PgroupCmd {
    /// GAP-compatible presentation from a skew tuple over a prime field
    Present {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive similarity search over GL_n
    Similar {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exhaustive congruence search over GL_n
    Congruent {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exhaustive congruence + substitution orbit test
    OrbitIso {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Outcomes ordered by exit code.
enum Outcome {
    Yes(String),
    No(String),
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, Error> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn read_file(path: &PathBuf) -> Result<Value, Error> {
    read_input(&Some(path.clone()))
}

/// Structural problems in the input (bad JSON shape, empty or ragged
/// tuples) are malformed input; later mathematical failures are not.
fn parse_tuple(v: &Value) -> Result<MatrixTuple, Error> {
    sj::tuple_from_json(v).map_err(|e| Error::Parse(e.to_string()))
}

fn pair_from_value(v: &Value) -> Result<MatrixPair, Error> {
    let t = parse_tuple(v)?;
    if t.arity() != 2 {
        return Err(Error::Parse("a pair is a tuple with exactly two members".into()));
    }
    MatrixPair::new(t.member(0).clone(), t.member(1).clone())
}

fn skew_pair_from_value(v: &Value) -> Result<SkewPair, Error> {
    let t = parse_tuple(v)?;
    if t.arity() != 2 {
        return Err(Error::Parse("a pair is a tuple with exactly two members".into()));
    }
    SkewPair::new(t.member(0).clone(), t.member(1).clone())
}

fn parse_eps(s: &str, field: &FieldSpec) -> Result<EpsilonSignature, Error> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|c| c.trim().parse().map_err(|_| Error::Parse("epsilon entries must be integers".into())))
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err(Error::Parse("--eps needs exactly three entries".into()));
    }
    Ok(EpsilonSignature::from_i64(field, parts[0], parts[1], parts[2]))
}

fn two_files(files: &[PathBuf]) -> Result<(&PathBuf, &PathBuf), Error> {
    match files {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse("expected exactly two input files".into())),
    }
}

fn decide(format: &FormatArg, positive: bool, yes: &str, no: &str, extra: Value) -> Outcome {
    let word = if positive { yes } else { no };
    let line = match format.format.as_str() {
        "text" => word.to_string(),
        _ => json!({"result": word, "detail": extra}).to_string(),
    };
    if positive {
        Outcome::Yes(line)
    } else {
        Outcome::No(line)
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Gadget { action } => match action {
            GadgetCmd::Build { eps, input } => {
                let pair = pair_from_value(&read_input(&input.input)?)?;
                let eps = parse_eps(&eps, pair.field())?;
                let t = build_t(&pair, &eps)?;
                Ok(Outcome::Yes(sj::tuple_to_json(&t).to_string()))
            }
            GadgetCmd::Witness { input } => {
                let s = sj::matrix_from_json(&read_input(&input.input)?)?;
                let w = witness_from_similarity(&s)?;
                Ok(Outcome::Yes(json!({"r": sj::matrix_to_json(&w.r)}).to_string()))
            }
            GadgetCmd::Verify { eps, files, format } => {
                let (p1, p2, w) = match files.as_slice() {
                    [a, b, c] => (
                        pair_from_value(&read_file(a)?)?,
                        pair_from_value(&read_file(b)?)?,
                        read_file(c)?,
                    ),
                    _ => return Err(Error::Parse("expected pair, pair, witness files".into())),
                };
                let eps = parse_eps(&eps, p1.field())?;
                let r = match w.get("r") {
                    Some(m) => sj::matrix_from_json(m)?,
                    None => sj::matrix_from_json(&w)?,
                };
                let t1 = build_t(&p1, &eps)?;
                let t2 = build_t(&p2, &eps)?;
                let ok = apply_congruence(&t1, &r)? == t2;
                Ok(decide(&format, ok, "verified", "not a witness", json!({})))
            }
        },
        Command::Pair { action } => match action {
            PairCmd::Similar { files, budget, format } => {
                let (a, b) = two_files(&files)?;
                let p1 = pair_from_value(&read_file(a)?)?;
                let p2 = pair_from_value(&read_file(b)?)?;
                let w = intertwiner_similarity_with_budget(&p1, &p2, budget)?;
                let extra = match &w {
                    Some(w) => json!({"s": sj::matrix_to_json(&w.s)}),
                    None => json!({}),
                };
                Ok(decide(&format, w.is_some(), "similar", "not similar", extra))
            }
        },
        Command::Pencil { action } => match action {
            PencilCmd::Canon { input, emit } => {
                let pair = skew_pair_from_value(&read_input(&input.input)?)?;
                let inv = pencil_invariants(&pair)?;
                let mut out = sj::invariants_to_json(&inv);
                if emit {
                    let canonical = emit_canonical_pair(&inv)?;
                    out["canonical"] = sj::tuple_to_json(&canonical.as_tuple());
                }
                Ok(Outcome::Yes(out.to_string()))
            }
            PencilCmd::Congruent { files, format } => {
                let (a, b) = two_files(&files)?;
                let p1 = skew_pair_from_value(&read_file(a)?)?;
                let p2 = skew_pair_from_value(&read_file(b)?)?;
                let same = pairs_congruent(&p1, &p2)?;
                Ok(decide(&format, same, "congruent", "not congruent", json!({})))
            }
            PencilCmd::Emit { input } => {
                let inv = sj::invariants_from_json(&read_input(&input.input)?)?;
                let pair = emit_canonical_pair(&inv)?;
                Ok(Outcome::Yes(sj::tuple_to_json(&pair.as_tuple()).to_string()))
            }
        },
        Command::Lie { action } => match action {
            LieCmd::Classify { input } => {
                let l = sj::structure_from_json(&read_input(&input.input)?)?;
                let label = lie_classify(&l)?;
                Ok(Outcome::Yes(sj::label_to_json(&label).to_string()))
            }
            LieCmd::Iso { files, format } => {
                let (a, b) = two_files(&files)?;
                let l1 = sj::structure_from_json(&read_file(a)?)?;
                let l2 = sj::structure_from_json(&read_file(b)?)?;
                let iso = lie_isomorphic(&l1, &l2)?;
                Ok(decide(&format, iso, "isomorphic", "not isomorphic", json!({})))
            }
            LieCmd::Emit { input, field } => {
                let v = read_input(&input.input)?;
                let label = sj::label_from_json(&v)?;
                let field = match &label {
                    skewlie::CanonicalLabel::Dim1 { .. } => field.resolve()?,
                    skewlie::CanonicalLabel::Dim2 { configuration, .. } => configuration.field().clone(),
                };
                let l = emit_canonical_algebra(&label, &field)?;
                Ok(Outcome::Yes(sj::structure_to_json(&l).to_string()))
            }
        },
        Command::Alg { action } => match action {
            AlgCmd::Check { input } => {
                let r = sj::structure_from_json(&read_input(&input.input)?)?;
                let rep = check_semialgebra(&r);
                Ok(Outcome::Yes(
                    json!({
                        "cube_zero": rep.cube_zero,
                        "square_dim": rep.square_dim,
                        "commutative": rep.commutative,
                        "anticommutative": rep.anticommutative,
                    })
                    .to_string(),
                ))
            }
            AlgCmd::Adjoin1 { input } => {
                let r = sj::structure_from_json(&read_input(&input.input)?)?;
                Ok(Outcome::Yes(sj::structure_to_json(&adjoin_identity(&r)?).to_string()))
            }
            AlgCmd::Encode { input } => {
                let t = parse_tuple(&read_input(&input.input)?)?;
                Ok(Outcome::Yes(sj::structure_to_json(&semialgebra_from_tuple(&t)?).to_string()))
            }
            AlgCmd::Decode { input } => {
                let r = sj::structure_from_json(&read_input(&input.input)?)?;
                let (t, basis) = tuple_from_semialgebra(&r)?;
                Ok(Outcome::Yes(
                    json!({"tuple": sj::tuple_to_json(&t), "basis": sj::matrix_to_json(&basis)}).to_string(),
                ))
            }
        },
        Command::Pgroup { action } => match action {
            PgroupCmd::Present { input } => {
                let t = parse_tuple(&read_input(&input.input)?)?;
                Ok(Outcome::Yes(pgroup_presentation(&t)?))
            }
        },
        Command::Oracle { action } => match action {
            OracleCmd::Similar { files, budget, format } => {
                let (a, b) = two_files(&files)?;
                let p1 = pair_from_value(&read_file(a)?)?;
                let p2 = pair_from_value(&read_file(b)?)?;
                let w = brute_similar(&p1, &p2, &EnumerationBudget::with_max(budget))?;
                let extra = match &w {
                    Some(w) => json!({"s": sj::matrix_to_json(&w.s)}),
                    None => json!({}),
                };
                Ok(decide(&format, w.is_some(), "similar", "not similar", extra))
            }
            OracleCmd::Congruent { files, budget, format } => {
                let (a, b) = two_files(&files)?;
                let t1 = parse_tuple(&read_file(a)?)?;
                let t2 = parse_tuple(&read_file(b)?)?;
                let w = brute_congruent(&t1, &t2, &EnumerationBudget::with_max(budget))?;
                let extra = match &w {
                    Some(w) => json!({"r": sj::matrix_to_json(&w.r)}),
                    None => json!({}),
                };
                Ok(decide(&format, w.is_some(), "congruent", "not congruent", extra))
            }
            OracleCmd::OrbitIso { files, budget, format } => {
                let (a, b) = two_files(&files)?;
                let t1 = parse_tuple(&read_file(a)?)?;
                let t2 = parse_tuple(&read_file(b)?)?;
                let iso = brute_orbit_iso(&t1, &t2, &EnumerationBudget::with_max(budget))?;
                Ok(decide(&format, iso, "isomorphic", "not isomorphic", json!({})))
            }
        },
        Command::Selftest => selftest(),
    }
}

/// Reduced-size versions of the acceptance checks.
fn selftest() -> Result<Outcome, Error> {
    use skewlie::pencil::SkewPencilInvariants;
    use skewlie::Polynomial;

    let f5 = FieldSpec::prime_field(5)?;
    let f3 = FieldSpec::prime_field(3)?;
    let budget = EnumerationBudget::default();
    let mut lines = vec![];

    // gadget transport at n=1 over F_5
    let pair = MatrixPair::new(
        Matrix::from_i64_rows(&f5, &[&[2]]),
        Matrix::from_i64_rows(&f5, &[&[3]]),
    )?;
    let s = Matrix::from_i64_rows(&f5, &[&[2]]);
    let eps = EpsilonSignature::from_i64(&f5, 1, -1, 1);
    let t1 = build_t(&pair, &eps)?;
    let t2 = build_t(&pair.conjugate(&s)?, &eps)?;
    let r = witness_from_similarity(&s)?;
    if !r.verify(&t1, &t2) {
        return Err(Error::Internal("selftest: gadget transport failed".into()));
    }
    lines.push("gadget transport: ok".to_string());

    // similarity decider vs oracle on all scalar pairs over F_3
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let p1 = MatrixPair::new(
                        Matrix::from_i64_rows(&f3, &[&[a]]),
                        Matrix::from_i64_rows(&f3, &[&[b]]),
                    )?;
                    let p2 = MatrixPair::new(
                        Matrix::from_i64_rows(&f3, &[&[c]]),
                        Matrix::from_i64_rows(&f3, &[&[d]]),
                    )?;
                    let fast = intertwiner_similarity_with_budget(&p1, &p2, 1_000_000)?;
                    let slow = brute_similar(&p1, &p2, &budget)?;
                    if fast.is_some() != slow.is_some() {
                        return Err(Error::Internal("selftest: similarity disagreement".into()));
                    }
                }
            }
        }
    }
    lines.push("similarity vs oracle (n=1, F_3): ok".to_string());

    // pencil roundtrip on a mixed record over F_5
    let inv = SkewPencilInvariants::new(
        f5.clone(),
        vec![
            (Polynomial::linear_from_root(f5.clone(), &f5.from_i64(1)), 2),
            (Polynomial::from_i64(&f5, &[2, 0, 1]), 1),
        ],
        vec![1],
        vec![1, 2],
    );
    let emitted = emit_canonical_pair(&inv)?;
    if pencil_invariants(&emitted)? != inv {
        return Err(Error::Internal("selftest: pencil roundtrip failed".into()));
    }
    lines.push("pencil roundtrip: ok".to_string());

    // Heisenberg classification
    let k = Matrix::from_i64_rows(&f3, &[&[0, 1], &[-1, 0]]);
    let heis = semialgebra_from_tuple(&MatrixTuple::new(vec![k])?)?;
    match lie_classify(&heis)? {
        skewlie::CanonicalLabel::Dim1 { p: 1, q: 1 } => {}
        _ => return Err(Error::Internal("selftest: Heisenberg label wrong".into())),
    }
    lines.push("Heisenberg(3) label: ok".to_string());

    Ok(Outcome::Yes(lines.join("\n")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, anything else is usage
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Yes(report)) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::No(report)) => {
            println!("{report}");
            ExitCode::from(1)
        }
        Err(Error::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(65)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
