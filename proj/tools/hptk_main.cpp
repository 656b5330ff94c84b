#include "hptk/corpus.hpp"
#include "hptk/drivers.hpp"
#include "hptk/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::string read_input(const std::string& path) {
    if (path.rfind("corpus:", 0) == 0) return hptk::corpus_document(path.substr(7));
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hptk::Error(hptk::ErrorKind::ParseOrUsage, "cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int emit(const hptk::DriverResult& res, const std::string& certificate_path) {
    std::cout << res.certificate;
    if (!certificate_path.empty()) {
        std::ofstream out(certificate_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write certificate to '" << certificate_path << "'\n";
            return 3;
        }
        out << res.certificate;
    }
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hptk - homotopy transfer and perturbation workbench"};
    app.require_subcommand(1);

    std::string file, cert_path;
    std::string mode = "ainfty", splitting = "auto", initiator = "aL";
    int arity = 4, word_bound = 4, sym_bound = 2;
    std::string mx, my, mz, corpus_name;

    auto* validate = app.add_subcommand("validate", "check the declared structure laws");
    validate->add_option("file", file)->required();
    validate->add_option("--certificate", cert_path);

    auto* cohomology = app.add_subcommand("cohomology", "Betti numbers and the induced product");
    cohomology->add_option("file", file)->required();
    cohomology->add_option("--certificate", cert_path);

    auto* transfer = app.add_subcommand("transfer", "transferred A-infinity / L-infinity structure");
    transfer->add_option("file", file)->required();
    transfer->add_option("--arity", arity);
    transfer->add_option("--mode", mode)->check(CLI::IsMember({"ainfty", "linfty"}));
    transfer->add_option("--splitting", splitting)->check(CLI::IsMember({"auto", "hodge"}));
    transfer->add_option("--certificate", cert_path);

    auto* deform = app.add_subcommand("deform", "canonical deformation pipeline");
    deform->add_option("file", file)->required();
    deform->add_option("--word-bound", word_bound);
    deform->add_option("--sym-bound", sym_bound);
    deform->add_option("--initiator", initiator)->check(CLI::IsMember({"aL", "L"}));
    deform->add_option("--certificate", cert_path);

    auto* massey = app.add_subcommand("massey", "triple product on cohomology classes");
    massey->add_option("file", file)->required();
    massey->add_option("x", mx)->required();
    massey->add_option("y", my)->required();
    massey->add_option("z", mz)->required();
    massey->add_option("--certificate", cert_path);

    auto* corpus = app.add_subcommand("corpus", "print a shipped model document");
    corpus->add_option("name", corpus_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (corpus->parsed()) {
            std::cout << hptk::corpus_document(corpus_name);
            return 0;
        }
        const std::string text = read_input(file);
        hptk::DriverResult res;
        if (validate->parsed()) res = hptk::run_validate(text);
        if (cohomology->parsed()) res = hptk::run_cohomology(text);
        if (transfer->parsed()) res = hptk::run_transfer(text, arity, mode, splitting);
        if (deform->parsed()) res = hptk::run_deform(text, word_bound, sym_bound, initiator);
        if (massey->parsed()) res = hptk::run_massey(text, mx, my, mz);
        return emit(res, cert_path);
    } catch (const hptk::Error& e) {
        std::cerr << e.what() << "\n";
        return static_cast<int>(e.kind());
    }
}
