#include "fixb/io.hpp"

#include <fstream>
#include <sstream>

namespace fixb {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

template <typename T>
T get_as(const json& obj, const char* key) {
  try {
    return field(obj, key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("field '") + key + "': " + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string dump_canonical(const json& doc) { return doc.dump(2) + "\n"; }

json instance_to_json(const Instance& inst) {
  const Layout& layout = inst.layout();
  json doc;
  doc["name"] = inst.name();
  doc["m"] = inst.machines();
  json slots = json::array();
  for (int i = 0; i < layout.slot_count(); ++i) {
    const Slot& s = layout.slot(i);
    json machines = json::array({s.machine + 1});
    if (s.shiftable) machines.push_back(s.machine + 2);
    slots.push_back({{"index", i + 1}, {"machines", machines}});
  }
  doc["layout"] = slots;
  json jobs = json::array();
  for (int j = 0; j < inst.jobs(); ++j) {
    json ptimes = json::array();
    for (int i = 0; i < layout.slot_count(); ++i) {
      const Slot& s = layout.slot(i);
      for (int k = s.machine; k <= s.last_machine(); ++k) {
        ptimes.push_back({{"slot", i + 1}, {"machine", k + 1}, {"p", inst.duration(j, i, k)}});
      }
    }
    jobs.push_back({{"id", j + 1}, {"ptimes", ptimes}});
  }
  doc["jobs"] = jobs;
  doc["meta"] = inst.meta();
  return doc;
}

Instance instance_from_json(const json& doc) {
  const int m = get_as<int>(doc, "m");
  const json& layout_doc = field(doc, "layout");
  if (!layout_doc.is_array()) throw InvalidInput("'layout' must be an array");
  std::vector<Slot> slots(layout_doc.size());
  std::vector<char> seen(layout_doc.size(), 0);
  for (const json& entry : layout_doc) {
    int index = get_as<int>(entry, "index");
    auto machines = get_as<std::vector<int>>(entry, "machines");
    if (index < 1 || index > static_cast<int>(slots.size()) || seen[index - 1]) {
      throw InvalidInput("layout slot index " + std::to_string(index) +
                         " is out of range or repeated");
    }
    seen[index - 1] = 1;
    if (machines.size() == 1) {
      slots[index - 1] = {machines[0] - 1, false};
    } else if (machines.size() == 2 && machines[1] == machines[0] + 1) {
      slots[index - 1] = {machines[0] - 1, true};
    } else {
      throw InvalidInput("slot " + std::to_string(index) +
                         ": eligible machines must be one machine or two consecutive machines");
    }
  }
  Layout layout(m, std::move(slots));
  ValidationReport layout_report = validate_layout(layout);
  if (!layout_report.ok()) throw InvalidInput("invalid layout: " + layout_report.summary());

  const json& jobs_doc = field(doc, "jobs");
  if (!jobs_doc.is_array()) throw InvalidInput("'jobs' must be an array");
  const int n = static_cast<int>(jobs_doc.size());
  Instance inst(doc.contains("name") ? get_as<std::string>(doc, "name") : std::string(),
                std::move(layout), n);
  std::vector<char> job_seen(n, 0);
  for (const json& job : jobs_doc) {
    int id = get_as<int>(job, "id");
    if (id < 1 || id > n || job_seen[id - 1]) {
      throw InvalidInput("job id " + std::to_string(id) + " is out of range or repeated");
    }
    job_seen[id - 1] = 1;
    for (const json& pt : field(job, "ptimes")) {
      int slot = get_as<int>(pt, "slot") - 1;
      int machine = get_as<int>(pt, "machine") - 1;
      if (slot < 0 || slot >= inst.layout().slot_count() ||
          !inst.layout().slot(slot).eligible(machine)) {
        throw InvalidInput("job " + std::to_string(id) + ": machine " +
                           std::to_string(machine + 1) + " is not eligible for slot " +
                           std::to_string(slot + 1));
      }
      inst.set_duration(id - 1, slot, machine, get_as<Time>(pt, "p"));
    }
  }
  if (doc.contains("meta")) inst.meta() = doc.at("meta");
  require_valid(inst);
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_file(path));
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text(path, dump_canonical(instance_to_json(inst)));
}

namespace {

json matrix_to_json(const Matrix<Time>& m) {
  json rows = json::array();
  for (int h = 0; h < m.rows(); ++h) {
    auto row = m.row(h);
    rows.push_back(std::vector<Time>(row.begin(), row.end()));
  }
  return rows;
}

Matrix<Time> matrix_from_json(const json& doc, const char* key) {
  auto rows = get_as<std::vector<std::vector<Time>>>(doc, key);
  if (rows.empty()) return {};
  const int cols = static_cast<int>(rows.front().size());
  Matrix<Time> m(static_cast<int>(rows.size()), cols);
  for (size_t h = 0; h < rows.size(); ++h) {
    if (static_cast<int>(rows[h].size()) != cols) {
      throw InvalidInput(std::string("ragged '") + key + "' matrix");
    }
    for (int k = 0; k < cols; ++k) m(static_cast<int>(h), k) = rows[h][k];
  }
  return m;
}

}  // namespace

json solution_to_json(const SolutionRecord& record) {
  const Solution& sol = record.solution;
  json doc;
  doc["instance"] = record.instance;
  json seq = json::array();
  for (int j : sol.sequence.order) seq.push_back(j + 1);
  doc["sequence"] = seq;
  json splits = json::array();
  for (const auto& mode : sol.modes) splits.push_back(mode.splits);
  doc["splits"] = splits;
  doc["starts"] = matrix_to_json(sol.starts);
  doc["ptimes"] = matrix_to_json(sol.ptimes);
  doc["makespan"] = sol.makespan;
  doc["algorithm"] = record.algorithm;
  doc["params"] = record.params;
  doc["time_ms"] = record.time_ms;
  return doc;
}

SolutionRecord solution_from_json(const json& doc) {
  SolutionRecord rec;
  rec.instance = get_as<std::string>(doc, "instance");
  for (int id : get_as<std::vector<int>>(doc, "sequence")) rec.solution.sequence.order.push_back(id - 1);
  for (auto& splits : get_as<std::vector<std::vector<int>>>(doc, "splits")) {
    rec.solution.modes.push_back({std::move(splits)});
  }
  rec.solution.starts = matrix_from_json(doc, "starts");
  if (doc.contains("ptimes")) rec.solution.ptimes = matrix_from_json(doc, "ptimes");
  rec.solution.makespan = get_as<Time>(doc, "makespan");
  if (doc.contains("algorithm")) rec.algorithm = get_as<std::string>(doc, "algorithm");
  if (doc.contains("params")) rec.params = doc.at("params");
  if (doc.contains("time_ms")) rec.time_ms = get_as<std::int64_t>(doc, "time_ms");
  return rec;
}

SolutionRecord load_solution(const std::filesystem::path& path) {
  return solution_from_json(parse_file(path));
}

void save_solution(const SolutionRecord& record, const std::filesystem::path& path) {
  write_text(path, dump_canonical(solution_to_json(record)));
}

std::string verify_solution(const Instance& inst, const SolutionRecord& record) {
  const Solution& stored = record.solution;
  Solution fresh;
  try {
    fresh = evaluate(inst, stored.sequence, stored.modes);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  if (stored.starts.rows() != fresh.starts.rows() || stored.starts.cols() != fresh.starts.cols()) {
    return "start matrix has the wrong shape";
  }
  for (int h = 0; h < fresh.starts.rows(); ++h) {
    for (int k = 0; k < fresh.starts.cols(); ++k) {
      if (stored.starts(h, k) != fresh.starts(h, k)) {
        return "start of position " + std::to_string(h + 1) + " on machine " +
               std::to_string(k + 1) + " is " + std::to_string(stored.starts(h, k)) +
               ", evaluator gives " + std::to_string(fresh.starts(h, k));
      }
    }
  }
  if (stored.ptimes.rows() > 0 && stored.ptimes != fresh.ptimes) {
    return "stored workloads differ from the evaluator's";
  }
  if (stored.makespan != fresh.makespan) {
    return "makespan is " + std::to_string(stored.makespan) + ", evaluator gives " +
           std::to_string(fresh.makespan);
  }
  return {};
}

Sequence parse_sequence(const std::string& text, int jobs) {
  Sequence seq;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int id = std::stoi(item, &used);
      seq.order.push_back(id - 1);
    } catch (const std::exception&) {
      throw InvalidInput("bad job id '" + item + "' in sequence");
    }
  }
  if (!is_permutation_of_jobs(seq, jobs)) {
    throw InvalidInput("sequence '" + text + "' is not a permutation of 1.." + std::to_string(jobs));
  }
  return seq;
}

}  // namespace fixb
