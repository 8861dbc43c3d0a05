use std::io::Write;

use clap::Parser;
use ultraspec::cli::{run, Args};

fn main() {
    let args = Args::parse();
    let out = run(&args);
    let mut stdout = std::io::stdout().lock();
    if let Some(doc) = &out.document {
        let _ = stdout.write_all(doc.as_bytes());
    }
    if let Some(r) = &out.rendering {
        let _ = stdout.write_all(r.as_bytes());
    }
    let _ = stdout.flush();
    for d in &out.diagnostics {
        eprintln!("ultraspec: {d}");
    }
    std::process::exit(out.code);
}
