fn main() {
    let status = reeb_metrics_cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(status);
}
