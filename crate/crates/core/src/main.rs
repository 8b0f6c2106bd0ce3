use clap::{Arg, ArgAction, Command};
use serde_json::Value;

use symnorm::cli::{run, run_batch, to_csv, JobSpec};
use symnorm::Caps;

fn common_args(cmd: Command) -> Command {
    cmd.arg(Arg::new("root").long("root").value_name("DESCRIPTOR"))
        .arg(Arg::new("fan").long("fan").value_name("FAN"))
        .arg(
            Arg::new("bundle")
                .long("bundle")
                .value_name("BUNDLE")
                .action(ArgAction::Append),
        )
        .arg(Arg::new("format").long("format").value_name("json|csv").default_value("json"))
        .arg(Arg::new("witnesses").long("witnesses").action(ArgAction::SetTrue))
}

fn cli() -> Command {
    let verbs: Vec<Command> = vec![
        Command::new("validate-fan").about("Validate a fan and report violations"),
        Command::new("symmetrize").about("Weyl-symmetrize an open fan into a complete one"),
        Command::new("ample").about("Global generation / ampleness of a bundle"),
        Command::new("polytope")
            .about("Vertices and lattice data of Q_h or P_h")
            .arg(Arg::new("side").long("side").value_name("q|p").default_value("q")),
        Command::new("pi-sets").about("The weight sets Pi(Z,h), Pi(Z^c,h), Pi(Y,h)"),
        Command::new("check")
            .about("Surjectivity of section multiplication")
            .arg(
                Arg::new("mode")
                    .long("mode")
                    .value_name("open|complete|equivalence")
                    .default_value("open"),
            ),
        Command::new("split")
            .about("Constructive decomposition of a lattice point")
            .arg(Arg::new("m").long("m").value_name("POINT").required(true))
            .arg(
                Arg::new("algorithm")
                    .long("algorithm")
                    .value_name("blowup|chain|dim2|simplex3|zn|auto")
                    .default_value("auto"),
            ),
        Command::new("saturation").about("Dominant-order saturation diagnostic"),
        Command::new("rj-check")
            .about("Wall-shift check for the descent lemma")
            .arg(Arg::new("j").long("j").value_name("WALL")),
        Command::new("l1-check").about("The Q/P reduction identities for an ample bundle"),
        Command::new("ex3-2-check").about("Ampleness inequalities and self-product check"),
        Command::new("batch")
            .about("Run a JSON manifest of jobs")
            .arg(Arg::new("manifest").long("manifest").value_name("FILE").required(true)),
    ];
    let mut root = Command::new("symnorm")
        .about(
            "Exact lattice-point toolkit: fans proper over the orthant, Weyl \
             symmetrization, support-function ampleness, and surjectivity of \
             section multiplication as Minkowski decomposition",
        )
        .subcommand_required(true);
    for v in verbs {
        root = root.subcommand(common_args(v));
    }
    root
}

fn main() {
    let matches = cli().get_matches();
    let (verb, sub) = matches.subcommand().expect("subcommand required");
    let caps = Caps::default();
    let format = sub
        .get_one::<String>("format")
        .cloned()
        .unwrap_or_else(|| "json".into());

    let emit = |v: &Value, format: &str| {
        if format == "csv" {
            print!("{}", to_csv(v));
        } else {
            println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
        }
    };

    if verb == "batch" {
        let path = sub.get_one::<String>("manifest").expect("required");
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read manifest {path}: {e}");
                std::process::exit(2);
            }
        };
        match run_batch(&text, &caps) {
            Ok(outcome) => {
                emit(&outcome.report, &format);
                if outcome.any_error || outcome.any_disagreement {
                    std::process::exit(1);
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                std::process::exit(2);
            }
        }
        return;
    }

    // Not every subcommand defines every flag; tolerate the missing ones.
    let opt = |id: &str| -> Option<String> {
        sub.try_get_one::<String>(id).ok().flatten().cloned()
    };
    let job = JobSpec {
        verb: verb.to_string(),
        root: opt("root").map(Value::String),
        fan: opt("fan"),
        bundles: sub
            .get_many::<String>("bundle")
            .map(|vals| vals.map(|s| Value::String(s.clone())).collect())
            .unwrap_or_default(),
        mode: opt("mode"),
        point: opt("m"),
        algorithm: opt("algorithm"),
        wall: opt("j").and_then(|s| s.parse::<usize>().ok()),
        side: opt("side"),
        witnesses: sub.get_flag("witnesses"),
    };
    match run(&job, &caps) {
        Ok(out) => emit(&out, &format),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
