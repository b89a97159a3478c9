#include "csv.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spherestat::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::string spaced = line;
  for (char& c : spaced) {
    if (c == ',' || c == '\t' || c == ';') c = ' ';
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

double parse_number(const std::string& token, const std::string& path,
                    int line_number) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw ParseError(path + ":" + std::to_string(line_number) +
                     ": non-numeric field '" + token + "'");
  }
  return value;
}

}  // namespace

ParsedPoints parse_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  bool weights_column = false;
  std::vector<std::vector<double>> rows;
  std::vector<int> row_lines;
  std::string line;
  int line_number = 0;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      if (trim(stripped.substr(1)) == "weights") weights_column = true;
      continue;
    }
    const std::vector<std::string> tokens = tokenize(stripped);
    if (rows.empty()) {
      arity = tokens.size();
      const std::size_t min_arity = weights_column ? 3 : 2;
      if (arity < min_arity) {
        throw ParseError(path + ":" + std::to_string(line_number) +
                         ": need at least " + std::to_string(min_arity) +
                         " columns");
      }
    } else if (tokens.size() != arity) {
      throw ParseError(path + ":" + std::to_string(line_number) +
                       ": ragged row (" + std::to_string(tokens.size()) +
                       " columns, expected " + std::to_string(arity) + ")");
    }
    std::vector<double> row;
    row.reserve(tokens.size());
    for (const std::string& token : tokens) {
      row.push_back(parse_number(token, path, line_number));
    }
    rows.push_back(std::move(row));
    row_lines.push_back(line_number);
  }
  if (rows.empty()) {
    throw ParseError(path + ": no data rows");
  }

  ParsedPoints parsed;
  if (weights_column) parsed.weights.emplace();
  const std::size_t coord_count = weights_column ? arity - 1 : arity;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Eigen::VectorXd coords(static_cast<Eigen::Index>(coord_count));
    for (std::size_t c = 0; c < coord_count; ++c) {
      coords[static_cast<Eigen::Index>(c)] = rows[i][c];
    }
    try {
      parsed.points.emplace_back(std::move(coords));
    } catch (const std::invalid_argument& e) {
      throw ParseError(path + ":" + std::to_string(row_lines[i]) + ": " +
                       e.what());
    }
    if (weights_column) parsed.weights->push_back(rows[i][coord_count]);
  }
  return parsed;
}

DiscreteMeasure measure_from(const ParsedPoints& parsed) {
  if (parsed.weights) {
    return DiscreteMeasure(parsed.points, *parsed.weights);
  }
  return DiscreteMeasure::uniform_on(parsed.points);
}

}  // namespace spherestat::cli
