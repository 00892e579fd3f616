#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>

#include "ilpbench/llm.hpp"

namespace ilpbench {

namespace {

constexpr std::string_view kInitialHeader =
    "Induce a theory based on background knowledge, positive and negative examples. "
    "Write it in Prolog. Do not give an explanation. Answer only the theory.\n";

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

std::string wrapped(std::string_view tag, const Atom& a) {
  return std::string(tag) + "(" + render_atom(a) + ").";
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  s = trim_right(s);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool is_fence(std::string_view line) { return trim(line).starts_with("```"); }

// `name(`, `name :-` or `name.` at the start of the trimmed line.
bool starts_clause(std::string_view line) {
  line = trim(line);
  if (line.empty() || !std::islower(static_cast<unsigned char>(line[0]))) return false;
  std::size_t i = 1;
  while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
  std::string_view rest = trim(line.substr(i));
  return rest.starts_with("(") || rest.starts_with(":-") || rest.starts_with(".");
}

}  // namespace

std::string build_initial_prompt(const Dataset& d) {
  std::vector<std::string> bk;
  for (const Atom& a : d.bk) bk.push_back(render_atom(a) + ".");
  std::vector<std::string> ex;
  for (const Atom& a : d.train_pos) ex.push_back(wrapped("pos", a));
  for (const Atom& a : d.train_neg) ex.push_back(wrapped("neg", a));
  std::string out(kInitialHeader);
  out += "\nBK:\n";
  out += join_lines(bk);
  out += "\n\nExamples:\n";
  out += join_lines(ex);
  out += "\n";
  return out;
}

std::string build_refine_prompt(const EvalReport& r) {
  std::vector<std::string> wrong;
  for (const Atom& a : r.misclassified_pos) wrong.push_back(wrapped("pos", a));
  for (const Atom& a : r.misclassified_neg) wrong.push_back(wrapped("neg", a));
  std::string out = "The theory scored:\n";
  out += "accuracy = " + fixed4(r.accuracy) + " precision = " + fixed4(r.precision) + " recall = " +
         fixed4(r.recall) + " f1 = " + fixed4(r.f1) + "\n";
  out += "\nand got these examples wrongly:\n";
  out += join_lines(wrong);
  out += "\n\nRefine the theory. Answer only the theory.\n";
  return out;
}

std::string extract_theory(std::string_view response) {
  const std::vector<std::string_view> lines = split_lines(response);

  bool fenced = false;
  for (std::string_view l : lines) fenced = fenced || is_fence(l);
  if (fenced) {
    std::string out;
    bool inside = false;
    for (std::string_view l : lines) {
      if (is_fence(l)) {
        inside = !inside;
        continue;
      }
      if (inside) {
        out.append(l);
        out += '\n';
      }
    }
    return out;
  }

  std::vector<bool> keep(lines.size(), false);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view t = trim(lines[i]);
    if (t.empty() || t.starts_with("%")) {
      keep[i] = true;
      continue;
    }
    if (!starts_clause(lines[i])) continue;
    // Extend to the line that closes the clause; a blank line abandons it.
    std::size_t j = i;
    bool closed = false;
    for (; j < lines.size(); ++j) {
      std::string_view tj = trim(lines[j]);
      if (j > i && tj.empty()) break;
      if (tj.ends_with(".")) {
        closed = true;
        break;
      }
    }
    if (!closed) continue;
    for (std::size_t k = i; k <= j; ++k) keep[k] = true;
    i = j;
  }
  if (std::all_of(keep.begin(), keep.end(), [](bool b) { return b; })) return std::string(response);
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!keep[i]) continue;
    out.append(lines[i]);
    out += '\n';
  }
  return out;
}

}  // namespace ilpbench
