#include "netloc/config.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace netloc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad numeric value for " + key);
  return out;
}

int parse_int(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  int out;
  try {
    out = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad integer value for " + key);
  return out;
}

std::string render(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void RunConfig::apply(const std::map<std::string, std::string>& kv) {
  const bool has_gamma = kv.count("gamma"), has_gamma_db = kv.count("gamma_db");
  const bool has_beta = kv.count("beta"), has_beta_db = kv.count("beta_db");
  if (has_gamma && has_gamma_db)
    throw std::invalid_argument("config: both gamma and gamma_db given");
  if (has_beta && has_beta_db)
    throw std::invalid_argument("config: both beta and beta_db given");

  for (const auto& [key, value] : kv) {
    if (key == "alpha") {
      mp.net.alpha = parse_double(value, key);
    } else if (key == "lambda") {
      mp.net.lambda = parse_double(value, key);
    } else if (key == "shadow_sigma_db") {
      mp.net.shadow_sigma_db = parse_double(value, key);
    } else if (key == "q") {
      mp.net.q = parse_double(value, key);
    } else if (key == "gamma") {
      mp.net.gamma = parse_double(value, key);
    } else if (key == "gamma_db") {
      mp.net.gamma = db_to_linear(parse_double(value, key));
    } else if (key == "beta") {
      mp.net.beta = parse_double(value, key);
    } else if (key == "beta_db") {
      mp.net.beta = db_to_linear(parse_double(value, key));
    } else if (key == "k_reuse") {
      mp.net.k_reuse = parse_int(value, key);
    } else if (key == "sigma_r") {
      mp.sigma_r = parse_double(value, key);
    } else if (key == "m_error") {
      mp.m_error = parse_double(value, key);
    } else if (key == "n_max") {
      mp.n_max = parse_int(value, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (key == "gamma_db")
      provided.insert("gamma");
    else if (key == "beta_db")
      provided.insert("beta");
    else
      provided.insert(key);
  }
}

RunConfig RunConfig::from_stream(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
  }
  RunConfig cfg;
  cfg.apply(kv);
  cfg.mp.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return from_stream(in, path);
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "alpha=" << render(mp.net.alpha) << "\n"
     << "beta=" << render(mp.net.beta) << "\n"
     << "gamma=" << render(mp.net.gamma) << "\n"
     << "k_reuse=" << mp.net.k_reuse << "\n"
     << "lambda=" << render(mp.net.lambda) << "\n"
     << "m_error=" << render(mp.m_error) << "\n"
     << "n_max=" << mp.n_max << "\n"
     << "q=" << render(mp.net.q) << "\n"
     << "shadow_sigma_db=" << render(mp.net.shadow_sigma_db) << "\n"
     << "sigma_r=" << render(mp.sigma_r) << "\n";
  return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RunManifest::hash_hex() const {
  std::ostringstream blob;
  blob << command << "\n"
       << params_canonical << "seed=" << seed << "\n"
       << "version=" << version << "\n";
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(blob.str());
  return os.str();
}

void RunManifest::write_sidecar(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path);
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  out << "command=" << command << "\n"
      << "hash=" << hash_hex() << "\n"
      << "seed=" << seed << "\n"
      << "version=" << version << "\n";
  for (const std::string& o : outputs) out << "output=" << o << "\n";
  out << "written_utc=" << std::put_time(std::gmtime(&t), "%F %T") << "\n"
      << "params:\n"
      << params_canonical;
  if (!out) throw std::runtime_error("failed writing manifest " + path);
}

void write_csv(const std::string& path, const std::string& manifest_hash,
               const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# manifest=" << manifest_hash << "\n" << header << "\n";
  for (const std::string& r : rows) out << r << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace netloc
