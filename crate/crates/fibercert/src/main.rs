use clap::Parser;

fn main() {
    let cli = fibercert::cli::Cli::parse();
    match fibercert::cli::run(cli) {
        Ok(out) => {
            print!("{}", out.output);
            std::process::exit(out.exit_code);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
