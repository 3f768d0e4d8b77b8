//! Runs the built `aitxt` binary and holds the exit-code matrix.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use super::stub::{Response, StubServer};

pub const INVALID: &str =
    "User-agent: *\n  Path: / html\n    Element: p:hover\n      Disallow: Train\n";
pub const UNKNOWN_ACTION: &str =
    "User-agent: *\n  Path: / html\n    Element: p\n      Disallow: Crop\n";
pub const NOT_AITXT: &str = "Hello world\n";

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aitxt"))
        .args(args)
        .env("NO_PROXY", "127.0.0.1,localhost")
        .env("no_proxy", "127.0.0.1,localhost")
        .env("AITXT_TIMEOUT_SECS", "5")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let output = child.wait_with_output().unwrap();
    Run {
        code: output.status.code().expect("exited normally"),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

pub struct Case {
    pub subcommand: &'static str,
    pub outcome: &'static str,
    pub args: Vec<String>,
    pub stdin: Option<String>,
    pub code: i32,
}

/// Files, servers and the cases that use them. The servers live as long as
/// this value.
pub struct Matrix {
    pub cases: Vec<Case>,
    _servers: Vec<StubServer>,
}

pub fn matrix(dir: &Path) -> Matrix {
    let write = |name: &str, text: &str| {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    };
    let good = write("good.aitxt", &super::fixture("fig1.aitxt"));
    let guide = write("guide.aitxt", &super::fixture("guide.aitxt"));
    let broken = write("broken.aitxt", NOT_AITXT);
    let invalid = write("invalid.aitxt", INVALID);
    let unknown = write("unknown.aitxt", UNKNOWN_ACTION);
    let missing = dir.join("missing.aitxt").to_string_lossy().into_owned();
    let out = dir.join("out.xml").to_string_lossy().into_owned();
    let unwritable = dir
        .join("no-such-dir")
        .join("out.xml")
        .to_string_lossy()
        .into_owned();

    let serve = |response: Response| StubServer::start(vec![("/ai.txt", response)]);
    let servers = vec![
        serve(Response::new(200, super::fixture("fig1.aitxt"))),
        serve(Response::new(404, "")),
        serve(Response::new(500, "")),
        serve(Response::new(200, vec![b'#'; 600 * 1024])),
        serve(Response::new(200, NOT_AITXT)),
        serve(Response::new(200, INVALID)),
    ];
    let [found, absent, failing, huge, fetched_broken, fetched_invalid] =
        [0, 1, 2, 3, 4, 5].map(|i| servers[i].origin());
    let refused = {
        let port = std::net::TcpListener::bind("127.0.0.1:0")
            .unwrap()
            .local_addr()
            .unwrap()
            .port();
        format!("http://127.0.0.1:{port}")
    };

    let query = |file: &str, agent: &str, element: &str, action: &str| -> Vec<String> {
        [
            "query",
            file,
            "--agent",
            agent,
            "--path",
            "/articles/today.html",
            "--element",
            element,
            "--action",
            action,
        ]
        .map(String::from)
        .to_vec()
    };
    let case = |subcommand, outcome, args: &[&str], code| Case {
        subcommand,
        outcome,
        args: args.iter().map(|s| s.to_string()).collect(),
        stdin: None,
        code,
    };
    let owned = |subcommand, outcome, args: Vec<String>, code| Case {
        subcommand,
        outcome,
        args,
        stdin: None,
        code,
    };

    let mut cases = vec![
        case("(none)", "help", &["--help"], 0),
        case("(none)", "version", &["--version"], 0),
        case("(none)", "no subcommand", &[], 64),
        case("(none)", "unknown subcommand", &["lint", &good], 64),
        case("parse", "success", &["parse", &good], 0),
        case(
            "parse",
            "lenient unknown action",
            &["parse", &unknown, "--lenient"],
            0,
        ),
        case("parse", "strict unknown action", &["parse", &unknown], 1),
        case("parse", "parse error", &["parse", &broken], 1),
        case("parse", "missing file", &["parse", &missing], 3),
        case("parse", "no file argument", &["parse"], 64),
        case("validate", "clean", &["validate", &good], 0),
        case(
            "validate",
            "validation error",
            &["validate", &invalid, "--strict"],
            2,
        ),
        case(
            "validate",
            "lenient warning only",
            &["validate", &invalid, "--lenient"],
            0,
        ),
        case("validate", "parse error", &["validate", &broken], 1),
        case("validate", "missing file", &["validate", &missing], 3),
        case(
            "validate",
            "conflicting modes",
            &["validate", &good, "--strict", "--lenient"],
            64,
        ),
        case("compile", "stdout", &["compile", &good], 0),
        case("compile", "output file", &["compile", &good, "-o", &out], 0),
        case(
            "compile",
            "unwritable output",
            &["compile", &good, "-o", &unwritable],
            3,
        ),
        case("compile", "validation error", &["compile", &invalid], 2),
        case("compile", "parse error", &["compile", &broken], 1),
        case("compile", "missing file", &["compile", &missing], 3),
        case(
            "compile",
            "unknown flag",
            &["compile", &good, "--pretty"],
            64,
        ),
        owned(
            "query",
            "disallowed",
            query(&good, "AnyBot", "p", "Train"),
            0,
        ),
        owned(
            "query",
            "allowed",
            query(&good, "AnyBot", "p", "Translate"),
            0,
        ),
        owned(
            "query",
            "guided",
            query(&guide, "AnyBot", "p", "Summarize"),
            0,
        ),
        owned(
            "query",
            "json",
            [query(&good, "AnyBot", "p", "Train"), vec!["--json".into()]].concat(),
            0,
        ),
        owned(
            "query",
            "unknown action",
            query(&good, "AnyBot", "p", "Crop"),
            64,
        ),
        owned(
            "query",
            "invalid agent",
            query(&good, "Any-Bot", "p", "Train"),
            64,
        ),
        case(
            "query",
            "relative path",
            &[
                "query",
                &good,
                "--agent",
                "A",
                "--path",
                "x",
                "--element",
                "p",
                "--action",
                "Train",
            ],
            64,
        ),
        case(
            "query",
            "missing option",
            &["query", &good, "--agent", "A"],
            64,
        ),
        owned(
            "query",
            "parse error",
            query(&broken, "AnyBot", "p", "Train"),
            1,
        ),
        owned(
            "query",
            "validation error",
            query(&invalid, "AnyBot", "p", "Train"),
            2,
        ),
        owned(
            "query",
            "missing file",
            query(&missing, "AnyBot", "p", "Train"),
            3,
        ),
        case(
            "prompt",
            "success",
            &["prompt", &guide, "--agent", "AnyBot", "--lang", "en-US"],
            0,
        ),
        case(
            "prompt",
            "no fallback",
            &[
                "prompt",
                &guide,
                "--agent",
                "AnyBot",
                "--lang",
                "fr",
                "--no-fallback",
            ],
            0,
        ),
        case(
            "prompt",
            "invalid language",
            &["prompt", &guide, "--agent", "A", "--lang", "english"],
            64,
        ),
        case(
            "prompt",
            "invalid agent",
            &["prompt", &guide, "--agent", "A!", "--lang", "en"],
            64,
        ),
        case(
            "prompt",
            "parse error",
            &["prompt", &broken, "--agent", "A", "--lang", "en"],
            1,
        ),
        case(
            "prompt",
            "validation error",
            &["prompt", &invalid, "--agent", "A", "--lang", "en"],
            2,
        ),
        case(
            "prompt",
            "missing file",
            &["prompt", &missing, "--agent", "A", "--lang", "en"],
            3,
        ),
        case("fetch", "found", &["fetch", &found], 0),
        case(
            "fetch",
            "found, compile",
            &["fetch", &found, "--compile"],
            0,
        ),
        case(
            "fetch",
            "found, validate",
            &["fetch", &found, "--validate"],
            0,
        ),
        case("fetch", "no policy", &["fetch", &absent], 0),
        case(
            "fetch",
            "no policy, compile",
            &["fetch", &absent, "--compile"],
            0,
        ),
        case("fetch", "server error", &["fetch", &failing], 3),
        case("fetch", "too large", &["fetch", &huge], 3),
        case("fetch", "connection refused", &["fetch", &refused], 3),
        case(
            "fetch",
            "parse error, validate",
            &["fetch", &fetched_broken, "--validate"],
            1,
        ),
        case(
            "fetch",
            "validation error, compile",
            &["fetch", &fetched_invalid, "--compile"],
            2,
        ),
        case("fetch", "not a URL", &["fetch", "example.com"], 64),
        case(
            "fetch",
            "unsupported scheme",
            &["fetch", "ftp://example.com"],
            64,
        ),
        case(
            "fetch",
            "conflicting flags",
            &["fetch", &found, "--compile", "--validate"],
            64,
        ),
    ];
    for (subcommand, extra) in [
        ("parse", vec![]),
        ("validate", vec![]),
        ("compile", vec![]),
        (
            "query",
            vec![
                "--agent",
                "AnyBot",
                "--path",
                "/articles/today.html",
                "--element",
                "p",
                "--action",
                "Train",
            ],
        ),
        ("prompt", vec!["--agent", "AnyBot", "--lang", "en"]),
    ] {
        let mut args = vec![subcommand.to_string(), "-".to_string()];
        args.extend(extra.into_iter().map(String::from));
        cases.push(Case {
            subcommand,
            outcome: "standard input",
            args,
            stdin: Some(super::fixture("fig1.aitxt")),
            code: 0,
        });
    }
    Matrix {
        cases,
        _servers: servers,
    }
}

/// Runs a case and returns the observed exit code when it differs.
pub fn check(case: &Case) -> Result<(), i32> {
    let args: Vec<&str> = case.args.iter().map(String::as_str).collect();
    let result = run(&args, case.stdin.as_deref());
    if result.code == case.code {
        Ok(())
    } else {
        Err(result.code)
    }
}
