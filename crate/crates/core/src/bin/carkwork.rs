use std::io::Write;
use std::net::SocketAddr;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use serde_json::json;

use carkwork::interface::{render, respond, ErrorKind, Params};

#[derive(Parser)]
#[command(
    name = "carkwork",
    version,
    about = "Modular group elements, binary quadratic forms, carks and geodesics",
    after_help = "Forms are written a,b,c and elements p,q,r,s or as words such as LSLLS. \
                  Every command prints one JSON document on standard output."
)]
struct Cli {
    /// Accepted for compatibility; JSON is the only output format.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a form (a,b,c) or a group element (p,q,r,s or a word).
    Classify {
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// The primitive form fixed by a group element.
    FormOf {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Reduce a form and print the path taken.
    Reduce {
        #[arg(long, default_value = "gauss", value_parser = ["gauss", "cark", "lagrange"])]
        method: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// All spine forms of the cark through a spine form.
    Spine {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Rotation-canonical turn sequence of a spine.
    Signature {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Word carrying one spine form to another.
    PathOnSpine {
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
    },
    /// Integer solutions of f(x, y) = n.
    Solve {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Geodesic of an indefinite form or a hyperbolic element.
    Geodesic {
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "h", value_parser = ["h", "disk"])]
        model: String,
        #[arg(long, default_value_t = carkwork::interface::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Slit-disk layout around a center element.
    Sunburst {
        #[arg(long, default_value_t = carkwork::sunburst::DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value = "")]
        center: String,
    },
    /// Spine plus Farey trees of a form's cark.
    Cark {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, default_value_t = carkwork::interface::DEFAULT_CARK_DEPTH)]
        depth: usize,
    },
    /// Serve every command as GET /<command>?key=value.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

/// A closed stdout (for example `| head`) is not an error worth a panic.
fn emit(body: &str) {
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

/// Forms have three comma separated entries; anything else is an element.
fn form_or_element(text: String) -> (&'static str, String) {
    if text.split(',').count() == 3 {
        ("form", text)
    } else {
        ("element", text)
    }
}

fn request(command: Command) -> (&'static str, Params) {
    let mut p = Params::new();
    let mut set = |k: &str, v: String| {
        p.insert(k.to_string(), v);
    };
    let op = match command {
        Command::Classify { target } => {
            let (k, v) = form_or_element(target);
            set(k, v);
            "classify"
        }
        Command::FormOf { element } => {
            set("element", element);
            "form-of"
        }
        Command::Reduce { method, form } => {
            set("method", method);
            set("form", form);
            "reduce"
        }
        Command::Spine { form } => {
            set("form", form);
            "spine"
        }
        Command::Signature { form } => {
            set("form", form);
            "signature"
        }
        Command::PathOnSpine { from, to } => {
            set("from", from);
            set("to", to);
            "path-on-spine"
        }
        Command::Solve { form, n, count } => {
            set("form", form);
            set("n", n);
            set("count", count.to_string());
            "solve"
        }
        Command::Geodesic {
            target,
            model,
            samples,
        } => {
            let (k, v) = form_or_element(target);
            set(k, v);
            set("model", model);
            set("samples", samples.to_string());
            "geodesic"
        }
        Command::Sunburst { depth, center } => {
            set("depth", depth.to_string());
            set("center", center);
            "sunburst"
        }
        Command::Cark { form, depth } => {
            set("form", form);
            set("depth", depth.to_string());
            "cark"
        }
        Command::Serve { .. } => unreachable!("serve is handled before dispatch"),
    };
    (op, p)
}

fn serve(host: &str, port: u16) -> ExitCode {
    let addr: SocketAddr = match format!("{host}:{port}").parse() {
        Ok(a) => a,
        Err(e) => {
            emit(&render(
                &json!({ "code": "usage", "message": e.to_string() }),
            ));
            return ExitCode::from(2);
        }
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    eprintln!("listening on http://{addr}");
    match runtime.block_on(carkwork::service::serve(addr)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            emit(&render(&json!({ "code": "io", "message": e.to_string() })));
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let message = e.kind().to_string();
            emit(&render(&json!({ "code": "usage", "message": message })));
            return ExitCode::from(2);
        }
    };
    let _ = cli.json;
    if let Command::Serve { port, host } = &cli.command {
        return serve(host, *port);
    }
    let (op, params) = request(cli.command);
    let (outcome, body) = respond(op, &params);
    emit(&body);
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e.kind == ErrorKind::Usage {
                eprintln!("{}", Cli::command().render_usage());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
