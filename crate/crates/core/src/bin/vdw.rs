use clap::Parser;
use vdw::cli::{run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("VDW_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own code 2 would read as an I/O failure
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(summary) => eprintln!("{summary}"),
        Err(e) => {
            eprintln!("vdw: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
