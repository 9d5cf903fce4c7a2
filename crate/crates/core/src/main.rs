use clap::Parser;
use transversal_lab::cli::{run, Cli, EXIT_INPUT};

fn main() {
    // clap's own usage errors exit with 2, which is reserved for Unknown verdicts
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = run(&cli);
    print!("{}", out.render(cli.common.json));
    std::process::exit(out.exit);
}
