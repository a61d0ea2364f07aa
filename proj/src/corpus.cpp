#include "crsa/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef CRSA_DEFAULT_CORPUS_DIR
#define CRSA_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace crsa {

std::vector<std::string> corpus_ids() {
  return {"member",       "cp",
          "while",        "integer",
          "not-left-linear", "bergstra-klop",
          "gramlich",     "toll",
          "quasi-over",   "cpw-not-normal",
          "asso",         "levy-a",
          "levy-b"};
}

std::string corpus_dir() {
  if (const char *env = std::getenv("CRSA_CORPUS_DIR"); env && *env)
    return env;
  return CRSA_DEFAULT_CORPUS_DIR;
}

std::string corpus_path(const std::string &id) {
  return corpus_dir() + "/" + id + ".crs";
}

System load_corpus_system(const std::string &id) {
  const std::string path = corpus_path(id);
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ParseResult pr = parse_spec(buf.str(), id);
  if (!pr.ok()) {
    std::string msg = "corpus system " + id + " failed to parse:";
    for (const Diagnostic &d : pr.diagnostics)
      if (d.is_error())
        msg += " " + d.message + ";";
    throw std::runtime_error(msg);
  }
  return *pr.system;
}

} // namespace crsa
