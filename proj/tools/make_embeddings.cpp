// Regenerates the bundled embedding file from the concept and vocabulary lists.
#include <fstream>
#include <iostream>
#include <sstream>

#include "secrisk/category/embedding.hpp"
#include "secrisk/common/error.hpp"

namespace {

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw secrisk::Error(std::string("cannot read ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: make_embeddings <concepts.txt> <vocab.txt> <out.vec>\n";
        return 2;
    }
    try {
        const auto table = secrisk::build_embedding_table(slurp(argv[1]), slurp(argv[2]), secrisk::kEmbeddingDim);
        std::ofstream out(argv[3], std::ios::binary);
        out << secrisk::format_embedding_table(table, secrisk::kEmbeddingDim);
        if (!out) throw secrisk::Error(std::string("cannot write ") + argv[3]);
        std::cerr << table.size() << " vectors written to " << argv[3] << "\n";
    } catch (const std::exception& e) {
        std::cerr << "make_embeddings: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
