fn main() -> std::process::ExitCode {
    isoform::cli::main()
}
