//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain violation
//! (including state limits), 4 internal invariant failure.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::algebra::{Base, BetaField, FieldElem};
use crate::analysis;
use crate::automata::{self, Dfa};
use crate::error::{Error, Result};
use crate::expand::{self, TauSpec};
use crate::intsys::{self, System};
use crate::minweight;
use crate::words::{value_beta, DigitWord};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "pisot-minweight", version, about = "Minimal-weight expansions in Pisot bases")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Greedy or τ expansion of an integer or of the value of a word.
    Expand(ExpandArgs),
    /// Whether a word has minimal weight.
    Check(CheckArgs),
    /// All minimal-weight expansions of a value.
    Enumerate(EnumerateArgs),
    /// Build and export one of the automata.
    Automaton(AutomatonArgs),
    /// Integer representations in F, T or S.
    Intrep(IntrepArgs),
    /// Average weights against the limiting constants.
    Stats(StatsArgs),
    /// Scalar multiplication cost table.
    Cost(CostArgs),
}

#[derive(Args, Debug, Clone)]
struct BaseArgs {
    /// golden, tribonacci or smallest-pisot.
    #[arg(long, conflicts_with = "poly")]
    base: Option<Base>,
    /// Custom minimal polynomial, highest degree first, e.g. "1,-1,0,-1".
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct ValueArgs {
    /// An integer.
    #[arg(allow_negative_numbers = true)]
    value: Option<i64>,
    /// Use the value of this word instead.
    #[arg(long, conflicts_with = "value")]
    of_word: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[command(flatten)]
    value: ValueArgs,
    /// Greedy expansion (the default for custom bases).
    #[arg(long, conflicts_with = "tau")]
    greedy: bool,
    /// τ expansion (the default for built-in bases).
    #[arg(long)]
    tau: bool,
    /// Use the variant τ with the other half-open domain.
    #[arg(long)]
    variant: bool,
    #[arg(long, default_value_t = 400)]
    max_len: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Check in an integer system instead of a base.
    #[arg(long, conflicts_with_all = ["base", "poly"])]
    system: Option<System>,
    /// Digit bound B: digits lie in {1−B, …, B−1}.
    #[arg(long, default_value_t = 2)]
    bound: i32,
    /// Also run the exhaustive search; for integer systems the number of
    /// extra leading positions it may use.
    #[arg(long, num_args = 0..=1, default_missing_value = "6")]
    oracle: Option<usize>,
    #[arg(allow_hyphen_values = true)]
    word: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[command(flatten)]
    value: ValueArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Zero automaton A_β.
    A,
    /// Weight transducer S_β.
    S,
    /// Heavy words (inputs of S_β), determinized.
    H,
    /// Minimal-weight words M_β.
    M,
    /// Minimal-weight integer expansions M_F, M_T, M_S.
    #[value(name = "MF")]
    Mf,
    #[value(name = "MT")]
    Mt,
    #[value(name = "MS")]
    Ms,
}

impl Which {
    fn system(self) -> Option<System> {
        match self {
            Which::Mf => Some(System::F),
            Which::Mt => Some(System::T),
            Which::Ms => Some(System::S),
            _ => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Compare {
    /// The hand-built golden construction.
    Explicit,
    /// The generic automata route (integer systems).
    Generic,
    /// M_β of the system's base (integer systems).
    Beta,
}

#[derive(Args, Debug)]
struct AutomatonArgs {
    #[command(flatten)]
    base: BaseArgs,
    #[arg(long, default_value_t = 2)]
    bound: i32,
    #[arg(long, value_enum, ignore_case = true)]
    which: Which,
    /// Print state and edge counts instead of the automaton.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum)]
    compare: Option<Compare>,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
}

#[derive(Args, Debug)]
struct IntrepArgs {
    #[arg(long)]
    system: System,
    /// The integer for --minform and --greedy when they are given without one.
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    /// Unique minimal-weight expansion of N.
    #[arg(long, allow_negative_numbers = true, num_args = 0..=1)]
    minform: Option<Option<i64>>,
    /// Greedy expansion of N ≥ 0.
    #[arg(long, allow_negative_numbers = true, num_args = 0..=1)]
    greedy: Option<Option<i64>>,
    /// Value of a word.
    #[arg(long, allow_hyphen_values = true)]
    value: Option<String>,
    /// g_(n+1) and G_n.
    #[arg(long)]
    bounds: Option<usize>,
    /// The first terms U_0, U_1, ….
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// One system; all three when absent.
    #[arg(long)]
    system: Option<System>,
    #[arg(long = "M", default_value_t = 10000)]
    m: u64,
    /// Also print the Markov matrix and its stationary vector.
    #[arg(long)]
    markov: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CostArgs {
    /// Number of multiples of the same point.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Also print estimated additions for scalars up to M.
    #[arg(long = "M")]
    m: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Runs the command line given as `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    let result = match cli.cmd {
        Cmd::Expand(a) => cmd_expand(&a, &mut out),
        Cmd::Check(a) => cmd_check(&a, &mut out),
        Cmd::Enumerate(a) => cmd_enumerate(&a, &mut out),
        Cmd::Automaton(a) => cmd_automaton(&a, &mut out),
        Cmd::Intrep(a) => cmd_intrep(&a, &mut out),
        Cmd::Stats(a) => cmd_stats(&a, &mut out),
        Cmd::Cost(a) => cmd_cost(&a, &mut out),
    };
    match result {
        Ok(()) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

enum Chosen {
    Builtin(Base, BetaField),
    Custom(BetaField),
}

impl Chosen {
    fn field(&self) -> &BetaField {
        match self {
            Chosen::Builtin(_, f) | Chosen::Custom(f) => f,
        }
    }

    fn base(&self) -> Option<Base> {
        match self {
            Chosen::Builtin(b, _) => Some(*b),
            Chosen::Custom(_) => None,
        }
    }

    fn name(&self) -> String {
        match self {
            Chosen::Builtin(b, _) => b.to_string(),
            Chosen::Custom(f) => format!("poly {:?}", f.min_poly()),
        }
    }
}

fn choose(a: &BaseArgs) -> Result<Chosen> {
    if let Some(p) = &a.poly {
        let coeffs: Vec<i64> = p
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse { text: p.clone(), reason: "expected comma-separated integers".into() })?;
        let f = BetaField::new(&coeffs)?;
        if let Some(b) = Base::ALL.into_iter().find(|b| b.matches(&f)) {
            return Ok(Chosen::Builtin(b, f));
        }
        return Ok(Chosen::Custom(f));
    }
    let b = a.base.unwrap_or(Base::Golden);
    Ok(Chosen::Builtin(b, b.field()))
}

fn builtin_base(c: &Chosen, what: &str) -> Result<Base> {
    c.base().ok_or_else(|| Error::Domain(format!("{what} is only available for the built-in bases")))
}

fn read_value(v: &ValueArgs, f: &BetaField) -> Result<FieldElem> {
    match (&v.value, &v.of_word) {
        (_, Some(w)) => Ok(value_beta(&DigitWord::parse(w)?, f)),
        (Some(n), None) => Ok(f.from_int(*n)),
        (None, None) => Err(Error::Parse { text: String::new(), reason: "give a value or --of-word".into() }),
    }
}

fn describe(x: &FieldElem, f: &BetaField) -> String {
    let q = f.q_from_elem(x);
    format!("{q} ≈ {:.6}", f.q_to_f64(&q))
}

fn cmd_expand(a: &ExpandArgs, out: &mut String) -> Result<()> {
    let c = choose(&a.base)?;
    let f = c.field();
    let z = read_value(&a.value, f)?;
    let use_greedy = a.greedy || (!a.tau && c.base().is_none());
    let (word, method) = if use_greedy {
        if f.sign(&z) < 0 {
            return Err(Error::Domain("greedy expansion needs a value ≥ 0".into()));
        }
        let e = expand::greedy_expand(&z, f, a.max_len);
        if !e.terminated {
            return Err(Error::NonTerminating(a.max_len));
        }
        (e.word, "greedy".to_string())
    } else {
        let spec = TauSpec::builtin(builtin_base(&c, "the τ expansion")?, a.variant);
        (expand::tau_expand(&z, &spec, f, a.max_len)?, spec.name.to_string())
    };
    match a.format {
        Format::Json => {
            let v = json!({
                "base": c.name(),
                "method": method,
                "word": word.to_string(),
                "digits": word.digits,
                "point": word.point,
                "weight": word.weight(),
                "value": describe(&z, f),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => {
            let shown = if word.is_empty() { "0".to_string() } else { word.to_string() };
            writeln!(out, "{shown}").unwrap();
            writeln!(out, "method: {method}").unwrap();
            writeln!(out, "weight: {}", word.weight()).unwrap();
            writeln!(out, "value: {}", describe(&z, f)).unwrap();
        }
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, out: &mut String) -> Result<()> {
    let w = DigitWord::parse(&a.word)?;
    if let Some(sys) = a.system {
        return check_integer(a, &w, sys, out);
    }
    let c = choose(&a.base)?;
    let f = c.field();
    if a.bound < 2 {
        return Err(Error::Domain("the digit bound B must be at least 2".into()));
    }
    if w.max_abs_digit() >= a.bound {
        return Err(Error::Domain(format!("digits of {w} exceed the bound B = {}", a.bound)));
    }
    let m: Dfa;
    let recognizer = match (c.base(), a.bound) {
        (Some(b), 2) => minweight::builtin_minweight_automaton(b),
        _ => {
            m = minweight::build_minweight_automaton(f, a.bound)?;
            &m
        }
    };
    let minimal = recognizer.accepts(&w.digits);
    let (verdict, lighter) = if minimal {
        ("minimal", None)
    } else {
        let (_, y) = minweight::class_min_weight(&w, f, a.bound)?;
        ("heavy", Some(y))
    };
    let oracle = match a.oracle {
        Some(_) => {
            let (mw, y) = minweight::class_min_weight(&w, f, a.bound)?;
            if (mw == w.weight()) != minimal {
                return Err(Error::Invariant(format!("automaton and oracle disagree on {w}")));
            }
            Some((mw, y))
        }
        None => None,
    };
    report_check(a.format, &w, verdict, lighter.as_ref(), oracle.map(|(m, y)| (m, y.to_string())), out);
    Ok(())
}

fn check_integer(a: &CheckArgs, w: &DigitWord, sys: System, out: &mut String) -> Result<()> {
    if w.max_abs_digit() > 1 {
        return Err(Error::Domain(format!("integer words use digits in {{-1, 0, 1}}, got {w}")));
    }
    let n = intsys::value_u(w, sys)?;
    let minimal = intsys::builtin_int_minweight_automaton(sys).accepts(&w.digits);
    let lighter = if minimal { None } else { Some(intsys::unique_minform(n, sys)?) };
    let verdict = if minimal { "minimal" } else { "heavy" };
    let oracle = match a.oracle {
        Some(slack) => {
            let y = intsys::int_heavy_oracle(w, sys, slack)?;
            if y.is_none() != minimal {
                return Err(Error::Invariant(format!("automaton and oracle disagree on {w}")));
            }
            let mw = y.as_ref().map_or(w.weight(), |y| y.weight());
            Some((mw, y.map_or_else(|| w.to_string(), |y| y.to_string())))
        }
        None => None,
    };
    report_check(a.format, w, verdict, lighter.as_ref(), oracle, out);
    if a.format == Format::Text {
        writeln!(out, "value: {n}").unwrap();
    }
    Ok(())
}

fn report_check(format: Format, w: &DigitWord, verdict: &str, lighter: Option<&DigitWord>, oracle: Option<(u64, String)>, out: &mut String) {
    match format {
        Format::Json => {
            let v = json!({
                "word": w.to_string(),
                "weight": w.weight(),
                "verdict": verdict,
                "lighter": lighter.map(|y| y.to_string()),
                "oracle_min_weight": oracle.as_ref().map(|o| o.0),
                "oracle_witness": oracle.as_ref().map(|o| o.1.clone()),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => {
            match lighter {
                Some(y) => writeln!(out, "{verdict}; lighter: {y}").unwrap(),
                None => writeln!(out, "{verdict}").unwrap(),
            }
            if let Some((m, y)) = oracle {
                writeln!(out, "oracle: minimum weight {m}, attained by {y}").unwrap();
            }
        }
    }
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut String) -> Result<()> {
    let c = choose(&a.base)?;
    let b = builtin_base(&c, "enumeration")?;
    let f = c.field();
    let z = read_value(&a.value, f)?;
    let words = expand::enumerate_minimal_placed(&z, b, f)?;
    match a.format {
        Format::Json => {
            let v = json!({
                "base": c.name(),
                "value": describe(&z, f),
                "weight": words.first().map(|w| w.weight()),
                "expansions": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        _ => {
            for w in &words {
                writeln!(out, "{w}").unwrap();
            }
        }
    }
    Ok(())
}

fn export_dfa(d: &Dfa, name: &str, format: Format, out: &mut String) {
    match format {
        Format::Json => writeln!(out, "{}", automata::dfa_to_json(d)).unwrap(),
        _ => out.push_str(&automata::dfa_to_dot(d, name)),
    }
}

fn cmd_automaton(a: &AutomatonArgs, out: &mut String) -> Result<()> {
    if let Some(sys) = a.which.system() {
        return automaton_integer(a, sys, out);
    }
    let c = choose(&a.base)?;
    let f = c.field();
    let name = format!("{:?} {}", a.which, c.name());
    match a.which {
        Which::A => {
            let z = minweight::build_zero_automaton(f, a.bound)?;
            if a.stats {
                writeln!(out, "states: {}", z.num_states()).unwrap();
                writeln!(out, "edges: {}", z.dfa.num_edges()).unwrap();
                for s in &z.states {
                    writeln!(out, "  {}", describe(s, f)).unwrap();
                }
            } else {
                export_dfa(&z.dfa, &name, a.format, out);
            }
        }
        Which::S => {
            let s = minweight::build_weight_transducer(f, a.bound)?;
            if a.stats {
                writeln!(out, "states: {}", s.num_states()).unwrap();
                writeln!(out, "useful states: {}", s.num_useful_states()).unwrap();
                writeln!(out, "edges: {}", s.transducer.num_edges()).unwrap();
                writeln!(out, "W: {}", s.max_weight).unwrap();
                writeln!(out, "sum of w_s: {}", s.state_weights.iter().sum::<u64>()).unwrap();
            } else if a.format == Format::Json {
                writeln!(out, "{}", automata::transducer_to_json(&s.transducer)).unwrap();
            } else {
                out.push_str(&automata::transducer_to_dot(&s.transducer, &name));
            }
        }
        Which::H | Which::M => {
            let explicit = || match (c.base(), a.which) {
                (Some(Base::Golden), Which::H) if a.bound == 2 => Ok(minweight::golden_explicit_h()),
                (Some(Base::Golden), Which::M) if a.bound == 2 => Ok(minweight::golden_explicit_m()),
                _ => Err(Error::Domain("the explicit construction exists for golden, B = 2 only".into())),
            };
            let d = if a.which == Which::M {
                match (c.base(), a.bound) {
                    (Some(b), 2) => minweight::builtin_minweight_automaton(b).clone(),
                    _ => minweight::build_minweight_automaton(f, a.bound)?,
                }
            } else {
                let s = minweight::build_weight_transducer(f, a.bound)?;
                automata::minimize(&automata::determinize(&s.heavy_words())?)
            };
            match a.compare {
                // The two heavy sets differ as languages; what must agree is
                // the set of words having a heavy factor.
                Some(Compare::Explicit) if a.which == Which::H => {
                    let e = explicit()?;
                    compare_line(&automata::factor_complement(&d)?, &automata::factor_complement(&e)?, out)?;
                }
                Some(Compare::Explicit) => compare_line(&d, &explicit()?, out)?,
                Some(_) => return Err(Error::Domain("this comparison is for integer systems".into())),
                None if a.stats => {
                    writeln!(out, "states: {}", d.num_states()).unwrap();
                    writeln!(out, "edges: {}", d.num_edges()).unwrap();
                }
                None => export_dfa(&d, &name, a.format, out),
            }
        }
        Which::Mf | Which::Mt | Which::Ms => unreachable!(),
    }
    Ok(())
}

fn compare_line(a: &Dfa, b: &Dfa, out: &mut String) -> Result<()> {
    match automata::language_difference(a, b)? {
        None => writeln!(out, "EQUAL").unwrap(),
        Some(w) => writeln!(out, "DIFFERENT; shortest word in exactly one: {}", DigitWord::new(w)).unwrap(),
    }
    Ok(())
}

fn automaton_integer(a: &AutomatonArgs, sys: System, out: &mut String) -> Result<()> {
    let d = intsys::builtin_int_minweight_automaton(sys);
    match a.compare {
        Some(Compare::Generic) => compare_line(d, &intsys::build_int_minweight_automaton_generic(sys)?, out)?,
        Some(Compare::Beta) => compare_line(d, minweight::builtin_minweight_automaton(sys.base()), out)?,
        Some(Compare::Explicit) => return Err(Error::Domain("no explicit construction for integer systems".into())),
        None if a.stats => {
            writeln!(out, "states: {}", d.num_states()).unwrap();
            writeln!(out, "edges: {}", d.num_edges()).unwrap();
        }
        None => export_dfa(d, &format!("M_{sys}"), a.format, out),
    }
    Ok(())
}

fn cmd_intrep(a: &IntrepArgs, out: &mut String) -> Result<()> {
    let sys = a.system;
    let mut v = serde_json::Map::new();
    let mut lines = Vec::new();
    let pick = |flag: Option<Option<i64>>| -> Result<Option<i64>> {
        match flag {
            None => Ok(None),
            Some(Some(n)) => Ok(Some(n)),
            Some(None) => a.n.map(Some).ok_or_else(|| Error::Parse { text: "intrep".into(), reason: "give N or --n".into() }),
        }
    };
    let minform = match (a.minform, a.greedy, a.n) {
        (None, None, Some(n)) => Some(n),
        _ => pick(a.minform)?,
    };
    if let Some(n) = minform {
        let w = intsys::unique_minform(n as i128, sys)?;
        lines.push(if w.is_empty() { "0".to_string() } else { w.to_string() });
        v.insert("minform".into(), json!(w.to_string()));
        v.insert("weight".into(), json!(w.weight()));
    }
    if let Some(n) = pick(a.greedy)? {
        let w = intsys::greedy_int(n as i128, sys)?;
        lines.push(format!("greedy: {w}"));
        v.insert("greedy".into(), json!(w.to_string()));
    }
    if let Some(text) = &a.value {
        let n = intsys::value_u(&DigitWord::parse(text)?, sys)?;
        lines.push(format!("value: {n}"));
        v.insert("value".into(), json!(n.to_string()));
    }
    if let Some(n) = a.bounds {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let b = intsys::bounds_gg(n, sys);
        lines.push(format!("g_{}: {}", n + 1, b.g_next));
        lines.push(format!("G_{n}: {}", b.big_g));
        v.insert("g_next".into(), json!(b.g_next.to_string()));
        v.insert("G".into(), json!(b.big_g.to_string()));
    }
    if let Some(k) = a.terms {
        let t = intsys::u_terms(sys, k.min(150));
        lines.push(format!("terms: {}", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        v.insert("terms".into(), json!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    }
    if lines.is_empty() {
        return Err(Error::Parse { text: "intrep".into(), reason: "give --minform, --greedy, --value, --bounds or --terms".into() });
    }
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap(),
        _ => lines.iter().for_each(|l| writeln!(out, "{l}").unwrap()),
    }
    Ok(())
}

fn cmd_stats(a: &StatsArgs, out: &mut String) -> Result<()> {
    let systems: Vec<System> = a.system.map_or(System::ALL.to_vec(), |s| vec![s]);
    let mut rows = Vec::new();
    for sys in systems {
        let f = sys.field();
        let c = analysis::nonzero_frequency(sys.base())?;
        let avg = analysis::average_weight_experiment(sys, a.m)?.to_f64().unwrap();
        let log = (a.m as f64).ln() / f.approx().ln();
        let freq = analysis::empirical_frequency(sys, a.m)?;
        rows.push(json!({
            "system": sys.to_string(),
            "M": a.m,
            "average_weight": avg,
            "average_over_log": avg / log,
            "empirical_frequency": freq,
            "constant": c.to_string(),
            "constant_value": f.q_to_f64(&c),
        }));
        if a.markov && a.format == Format::Text {
            let m = analysis::markov_model(sys.base());
            let pi = analysis::stationary(&m)?;
            writeln!(out, "{sys} window chain").unwrap();
            for (i, label) in m.state_labels.iter().enumerate() {
                let row: Vec<String> = m.matrix[i].iter().map(|x| x.to_string()).collect();
                writeln!(out, "  {label}: [{}]  π = {}", row.join(", "), pi[i]).unwrap();
            }
        }
    }
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap()).unwrap(),
        Format::Csv => {
            writeln!(out, "system,M,average_weight,average_over_log,empirical_frequency,constant").unwrap();
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{:.6},{:.6},{:.6},{:.6}",
                    r["system"].as_str().unwrap(),
                    r["M"],
                    r["average_weight"].as_f64().unwrap(),
                    r["average_over_log"].as_f64().unwrap(),
                    r["empirical_frequency"].as_f64().unwrap(),
                    r["constant_value"].as_f64().unwrap()
                )
                .unwrap();
            }
        }
        _ => {
            for r in &rows {
                writeln!(
                    out,
                    "{}: M = {}, average weight {:.4}, average / log_β M {:.4}, empirical frequency {:.5}, constant {} ≈ {:.5}",
                    r["system"].as_str().unwrap(),
                    r["M"],
                    r["average_weight"].as_f64().unwrap(),
                    r["average_over_log"].as_f64().unwrap(),
                    r["empirical_frequency"].as_f64().unwrap(),
                    r["constant"].as_str().unwrap(),
                    r["constant_value"].as_f64().unwrap()
                )
                .unwrap();
            }
        }
    }
    Ok(())
}

fn cmd_cost(a: &CostArgs, out: &mut String) -> Result<()> {
    let rows = analysis::cost_table(a.r)?;
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap()).unwrap(),
        Format::Csv => {
            writeln!(out, "system,digits,beta,weight_per_log2,length_per_log2,cost_per_log2").unwrap();
            for r in &rows {
                writeln!(
                    out,
                    "{},\"{}\",{:.6},{:.6},{:.6},{:.6}",
                    r.system, r.digits, r.beta, r.weight_per_log2, r.length_per_log2, r.cost_per_log2
                )
                .unwrap();
            }
        }
        _ => {
            writeln!(out, "r = {}: additions ≈ (n + r·avg weight), in units of log₂ M", a.r).unwrap();
            writeln!(out, "{:<6} {:<10} {:>8} {:>10} {:>10}", "U_n", "digits", "β", "avg/log₂M", "cost").unwrap();
            for r in &rows {
                write!(
                    out,
                    "{:<6} {:<10} {:>8.4} {:>10.4} {:>10.3}",
                    r.system, r.digits, r.beta, r.weight_per_log2, r.cost_per_log2
                )
                .unwrap();
                if let Some(m) = a.m {
                    write!(out, "   ≈ {:.1} additions at M = {m}", r.estimate(m)).unwrap();
                }
                writeln!(out).unwrap();
            }
            let best = rows.iter().min_by(|x, y| x.cost_per_log2.total_cmp(&y.cost_per_log2)).unwrap();
            writeln!(out, "cheapest: {} {}", best.system, best.digits).unwrap();
            let pair = |x: &str, y: &str| {
                let a = analysis::signed_row(&rows, x).unwrap();
                let b = analysis::signed_row(&rows, y).unwrap();
                let rel = if a.cost_per_log2 < b.cost_per_log2 { "<" } else { "≥" };
                format!("{x} {:.3} {rel} {y} {:.3}", a.cost_per_log2, b.cost_per_log2)
            };
            writeln!(out, "{}", pair("F", "2^n")).unwrap();
            writeln!(out, "{}", pair("S", "F")).unwrap();
            writeln!(out, "{}", pair("T", "F")).unwrap();
        }
    }
    Ok(())
}
