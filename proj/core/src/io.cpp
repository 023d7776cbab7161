#include "fusionmod/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "fusionmod/error.hpp"
#include "json.hpp"

namespace fusionmod {

namespace {

using nlohmann::json;

json ring_json(const FusionRing& R) {
  json j;
  j["name"] = R.name();
  j["labels"] = R.labels();
  j["unit"] = R.unit();
  j["dual"] = R.duals();
  const int r = R.rank();
  json tensor = json::array();
  for (int i = 0; i < r; ++i) {
    json mat = json::array();
    for (int k = 0; k < r; ++k) {
      json row = json::array();
      for (int l = 0; l < r; ++l) row.push_back(R.N(i, k, l));
      mat.push_back(std::move(row));
    }
    tensor.push_back(std::move(mat));
  }
  j["N"] = std::move(tensor);
  json sh = json::object();
  for (const auto& [name, coeffs] : R.shorthands()) sh[name] = coeffs;
  j["shorthands"] = std::move(sh);
  if (R.grading()) {
    j["grading"] = {{"factors", R.grading()->factors}, {"degree", R.grading()->degree}};
  }
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

json parse_json(std::string_view bytes) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

void check_module_ring(const FusionModule& K, const FusionRing& R, std::size_t t) {
  if (!K.ring() || !K.ring()->same_structure(R))
    throw Error("module " + std::to_string(t) + " is not over ring " + R.name());
  Report rep = validate_module(K);
  if (!rep) throw Error("module " + std::to_string(t) + " fails " + rep.kind + ": " + rep.message);
}

std::vector<FusionModule> load_json_modules(std::string_view bytes, const RingPtr& R) {
  json j = parse_json(bytes);
  std::vector<FusionModule> out;
  try {
    const std::string hash = j.at("ring_hash").get<std::string>();
    if (hash != ring_hash(*R))
      throw Error("module file was written for ring '" + j.value("ring", std::string("?")) +
                  "' (hash mismatch with " + R->name() + ")");
    const auto& mods = j.at("modules");
    const std::size_t count = j.at("count").get<std::size_t>();
    if (count != mods.size()) throw Error("module count does not match the header");
    for (std::size_t t = 0; t < mods.size(); ++t) {
      const auto& m = mods[t];
      const int rank = m.at("rank").get<int>();
      if (rank < 1) throw Error("module " + std::to_string(t) + " has nonpositive rank");
      const auto& mats = m.at("matrices");
      if (static_cast<int>(mats.size()) != R->rank())
        throw Error("module " + std::to_string(t) + " has the wrong number of matrices");
      std::vector<IntMatrix> M;
      for (const auto& mat : mats) {
        if (static_cast<int>(mat.size()) != rank) throw Error("module " + std::to_string(t) + " has a malformed matrix block");
        IntMatrix flat;
        for (const auto& row : mat) {
          if (static_cast<int>(row.size()) != rank) throw Error("module " + std::to_string(t) + " has a malformed matrix block");
          for (const auto& v : row) flat.push_back(v.get<int>());
        }
        M.push_back(std::move(flat));
      }
      out.emplace_back(R, rank, std::move(M));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed module file: ") + e.what());
  }
  for (std::size_t t = 0; t < out.size(); ++t) check_module_ring(out[t], *R, t);
  return out;
}

std::vector<FusionModule> load_text_modules(std::string_view bytes, const RingPtr& R) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  std::size_t lineno = 0;
  auto next = [&](bool skip_blank) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (skip_blank && line.find_first_not_of(" \t") == std::string::npos) continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) { throw Error("line " + std::to_string(lineno) + ": " + msg); };
  auto field = [&](const std::string& key) {
    if (!next(true)) fail("missing '" + key + "' header");
    if (line.rfind(key + " ", 0) != 0) fail("expected '" + key + "'");
    return line.substr(key.size() + 1);
  };
  const std::string name = field("ring");
  const std::string hash = field("hash");
  if (hash != ring_hash(*R)) throw Error("module file was written for ring '" + name + "' (hash mismatch with " + R->name() + ")");
  std::size_t count = 0;
  try {
    count = std::stoul(field("count"));
  } catch (const std::logic_error&) {
    fail("bad count");
  }
  std::vector<FusionModule> out;
  for (std::size_t t = 0; t < count; ++t) {
    if (!next(true)) fail("expected " + std::to_string(count) + " modules, found " + std::to_string(t));
    std::istringstream head(line);
    std::string kw1, kw2;
    std::size_t k = 0;
    int rank = 0;
    if (!(head >> kw1 >> k >> kw2 >> rank) || kw1 != "module" || kw2 != "rank" || rank < 1) fail("expected 'module <k> rank <r>'");
    if (k != t) fail("module index out of order");
    std::vector<IntMatrix> M(R->rank());
    for (int i = 0; i < R->rank(); ++i)
      for (int a = 0; a < rank; ++a) {
        if (!next(false)) fail("truncated matrix block");
        std::istringstream row(line);
        for (int b = 0; b < rank; ++b) {
          int v;
          if (!(row >> v)) fail("malformed matrix block");
          M[i].push_back(v);
        }
        std::string extra;
        if (row >> extra) fail("malformed matrix block");
      }
    out.emplace_back(R, rank, std::move(M));
  }
  if (next(true)) fail("trailing content");
  for (std::size_t t = 0; t < out.size(); ++t) check_module_ring(out[t], *R, t);
  return out;
}

}  // namespace

ModuleFormat parse_module_format(std::string_view name) {
  if (name == "json") return ModuleFormat::Json;
  if (name == "text") return ModuleFormat::Text;
  throw Error("unknown module format '" + std::string(name) + "' (json|text)");
}

std::string ring_hash(const FusionRing& R) { return sha256_hex(ring_json(R).dump()); }

std::string save_ring(const FusionRing& R) {
  Report rep = validate_ring(R);
  if (!rep) throw Error("refusing to save invalid ring " + R.name() + ": " + rep.message);
  json j = ring_json(R);
  j["hash"] = sha256_hex(j.dump());
  return j.dump() + "\n";
}

RingPtr load_ring(std::string_view bytes) {
  json j = parse_json(bytes);
  std::shared_ptr<FusionRing> R;
  try {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const int r = static_cast<int>(labels.size());
    std::vector<int> tensor;
    const auto& t = j.at("N");
    if (static_cast<int>(t.size()) != r) throw Error("N has the wrong shape");
    for (const auto& mat : t) {
      if (static_cast<int>(mat.size()) != r) throw Error("N has the wrong shape");
      for (const auto& row : mat) {
        if (static_cast<int>(row.size()) != r) throw Error("N has the wrong shape");
        for (const auto& v : row) tensor.push_back(v.get<int>());
      }
    }
    R = std::make_shared<FusionRing>(j.at("name").get<std::string>(), labels, j.at("unit").get<int>(),
                                     j.at("dual").get<std::vector<int>>(), std::move(tensor));
    if (j.contains("shorthands"))
      for (const auto& [name, coeffs] : j["shorthands"].items()) {
        auto c = coeffs.get<std::vector<int>>();
        if (static_cast<int>(c.size()) != r) throw Error("shorthand '" + name + "' has the wrong length");
        R->set_shorthand(name, std::move(c));
      }
    if (j.contains("grading")) {
      Grading g;
      g.factors = j["grading"].at("factors").get<std::vector<int>>();
      g.degree = j["grading"].at("degree").get<std::vector<std::vector<int>>>();
      R->set_grading(std::move(g));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed ring file: ") + e.what());
  }
  if (j.contains("hash") && j["hash"] != ring_hash(*R)) throw Error("ring hash mismatch (file was modified)");
  Report rep = validate_ring(*R);
  if (!rep) throw Error("ring " + R->name() + " fails " + rep.kind + ": " + rep.message);
  return R;
}

std::string save_modules(const std::vector<FusionModule>& modules, const FusionRing& R, ModuleFormat format) {
  for (std::size_t t = 0; t < modules.size(); ++t) check_module_ring(modules[t], R, t);
  const std::string hash = ring_hash(R);
  if (format == ModuleFormat::Json) {
    json j;
    j["ring"] = R.name();
    j["ring_hash"] = hash;
    j["count"] = modules.size();
    json mods = json::array();
    for (std::size_t t = 0; t < modules.size(); ++t) {
      const FusionModule& K = modules[t];
      json mats = json::array();
      for (int i = 0; i < R.rank(); ++i) {
        json mat = json::array();
        for (int a = 0; a < K.rank(); ++a) {
          json row = json::array();
          for (int b = 0; b < K.rank(); ++b) row.push_back(K.at(i, a, b));
          mat.push_back(std::move(row));
        }
        mats.push_back(std::move(mat));
      }
      mods.push_back({{"index", t}, {"rank", K.rank()}, {"matrices", std::move(mats)}});
    }
    j["modules"] = std::move(mods);
    return j.dump(1) + "\n";
  }
  std::ostringstream out;
  out << "ring " << R.name() << "\nhash " << hash << "\ncount " << modules.size() << "\n";
  for (std::size_t t = 0; t < modules.size(); ++t) {
    const FusionModule& K = modules[t];
    out << "\nmodule " << t << " rank " << K.rank() << "\n";
    for (int i = 0; i < R.rank(); ++i)
      for (int a = 0; a < K.rank(); ++a) {
        for (int b = 0; b < K.rank(); ++b) out << (b ? " " : "") << K.at(i, a, b);
        out << "\n";
      }
  }
  return out.str();
}

std::vector<FusionModule> load_modules(std::string_view bytes, const RingPtr& R, ModuleFormat format) {
  if (!R) throw Error("load_modules needs a ring");
  return format == ModuleFormat::Json ? load_json_modules(bytes, R) : load_text_modules(bytes, R);
}

std::vector<FusionModule> load_modules(std::string_view bytes, const RingPtr& R) {
  for (char c : bytes) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return load_modules(bytes, R, c == '{' ? ModuleFormat::Json : ModuleFormat::Text);
  }
  throw Error("empty module file");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace fusionmod
