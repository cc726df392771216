/*
 * Copyright 2026 The FlexDM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "persistence.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace flexdm {

namespace fs = std::filesystem;

std::string job_id(std::string_view canonical) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

const char* status_token(JobStatus status) {
  return status == JobStatus::kCompleted ? "COMPLETED" : "FAILED";
}

std::string format_accuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
  return buf;
}

fs::path result_path(const fs::path& dir, const std::string& job_id) {
  return dir / (job_id + kResultSuffix);
}

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

void append_matrix(std::ostringstream& out, const ConfusionMatrix& m) {
  const std::string corner = "actual\\predicted";
  std::size_t first = corner.size();
  for (const auto& l : m.labels) first = std::max(first, l.size());
  std::size_t cell = 1;
  for (const auto& l : m.labels) cell = std::max(cell, l.size());
  for (const auto& row : m.counts) {
    for (std::size_t c : row) cell = std::max(cell, std::to_string(c).size());
  }
  auto pad_right = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  auto pad_left = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  out << "confusion matrix:\n" << pad_right(corner, first);
  for (const auto& l : m.labels) out << ' ' << pad_left(l, cell);
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << pad_right(m.labels[i], first);
    for (std::size_t c : m.counts[i]) out << ' ' << pad_left(std::to_string(c), cell);
    out << '\n';
  }
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw PersistenceError("write failed for " + path.string() + ": " + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

void write_file_synced(const fs::path& path, const std::string& data) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) {
    throw PersistenceError("cannot create " + path.string() + ": " + std::strerror(errno));
  }
  try {
    write_all(fd, data, path);
    if (::fsync(fd) != 0) {
      throw PersistenceError("fsync failed for " + path.string() + ": " + std::strerror(errno));
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_result(const Job& job, const EvalResult& result) {
  std::ostringstream out;
  out << "job: " << job.id << '\n'
      << "dataset: " << job.dataset_name << '\n'
      << "classifier: " << job.classifier_name << '\n'
      << "params: " << job.params_string() << '\n'
      << "test: " << job.test.token() << '\n';
  if (!result.completed()) {
    out << "status: FAILED\n"
        << "error: " << one_line(result.message) << '\n';
    return out.str();
  }
  out << "accuracy: " << format_accuracy(result.accuracy) << '\n';
  if (job.results.include_matrix) append_matrix(out, result.matrix);
  return out.str();
}

fs::path write_result(const fs::path& dir, const Job& job, const EvalResult& result,
                      const std::function<void()>& before_rename) {
  fs::path final_path = result_path(dir, job.id);
  fs::path tmp = final_path;
  tmp += ".tmp";
  write_file_synced(tmp, format_result(job, result));
  if (before_rename) before_rename();
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) {
    throw PersistenceError("cannot rename " + tmp.string() + ": " + ec.message());
  }
  return final_path;
}

std::optional<StoredResult> read_result(const fs::path& dir, const std::string& job_id) {
  fs::path path = result_path(dir, job_id);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  std::istringstream in(read_text(path));
  StoredResult stored;
  bool have_outcome = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("accuracy: ", 0) == 0) {
      stored.accuracy_text = line.substr(10);
      double v = 0.0;
      auto [p, err] = std::from_chars(stored.accuracy_text.data(),
                                      stored.accuracy_text.data() + stored.accuracy_text.size(), v);
      if (err != std::errc()) return std::nullopt;
      stored.accuracy = v;
      stored.status = JobStatus::kCompleted;
      have_outcome = true;
    } else if (line == "status: FAILED") {
      stored.status = JobStatus::kFailed;
      have_outcome = true;
    } else if (line.rfind("error: ", 0) == 0) {
      stored.message = line.substr(7);
    }
  }
  if (!have_outcome) return std::nullopt;
  return stored;
}

std::string format_journal_line(const JournalEntry& entry) {
  char secs[64];
  std::snprintf(secs, sizeof(secs), "%.3f", entry.seconds);
  return entry.job_id + '\t' + status_token(entry.status) + '\t' + secs + '\n';
}

Journal::Journal(const fs::path& dir) {
  fs::path path = dir / kJournalFile;
  std::error_code ec;
  if (fs::exists(path, ec)) {
    std::string text = read_text(path);
    if (!text.empty() && text.back() != '\n') {
      auto keep = text.rfind('\n');
      fs::resize_file(path, keep == std::string::npos ? 0 : keep + 1, ec);
      if (ec) throw PersistenceError("cannot repair torn journal: " + ec.message());
    }
  }
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw PersistenceError("cannot open journal " + path.string() + ": " + std::strerror(errno));
  }
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

void Journal::append(const JournalEntry& entry) {
  write_all(fd_, format_journal_line(entry), kJournalFile);
  if (::fsync(fd_) != 0) {
    throw PersistenceError(std::string("journal fsync failed: ") + std::strerror(errno));
  }
  ++written_;
}

namespace {

bool is_job_id(const std::string& s) {
  if (s.size() != 16) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

std::optional<JournalEntry> parse_journal_line(const std::string& line) {
  auto t1 = line.find('\t');
  if (t1 == std::string::npos) return std::nullopt;
  auto t2 = line.find('\t', t1 + 1);
  if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
    return std::nullopt;
  }
  JournalEntry e;
  e.job_id = line.substr(0, t1);
  std::string status = line.substr(t1 + 1, t2 - t1 - 1);
  std::string secs = line.substr(t2 + 1);
  if (!is_job_id(e.job_id)) return std::nullopt;
  if (status == "COMPLETED") {
    e.status = JobStatus::kCompleted;
  } else if (status == "FAILED") {
    e.status = JobStatus::kFailed;
  } else {
    return std::nullopt;
  }
  auto [p, ec] = std::from_chars(secs.data(), secs.data() + secs.size(), e.seconds);
  if (secs.empty() || ec != std::errc() || p != secs.data() + secs.size()) return std::nullopt;
  return e;
}

}  // namespace

JournalState load_journal(const fs::path& dir) {
  JournalState state;
  fs::path path = dir / kJournalFile;
  std::error_code ec;
  if (!fs::exists(path, ec)) return state;
  std::string text = read_text(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      state.warnings.push_back("journal line " + std::to_string(line_no) +
                               " is incomplete (interrupted write); ignoring it");
      break;
    }
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    auto entry = parse_journal_line(line);
    if (!entry) {
      throw PersistenceError("journal " + path.string() + " is corrupt at line " +
                             std::to_string(line_no));
    }
    state.latest[entry->job_id] = entry->status;
    state.entries.push_back(std::move(*entry));
  }
  return state;
}

std::set<std::string> load_completed(const fs::path& dir, std::vector<std::string>* warnings) {
  JournalState state = load_journal(dir);
  if (warnings) warnings->insert(warnings->end(), state.warnings.begin(), state.warnings.end());
  std::set<std::string> done;
  for (const auto& [id, status] : state.latest) {
    std::error_code ec;
    if (status == JobStatus::kCompleted && fs::is_regular_file(result_path(dir, id), ec)) {
      done.insert(id);
    }
  }
  return done;
}

SummaryRow summary_row(const Job& job, const EvalResult& result) {
  SummaryRow row;
  row.canonical = job.canonical;
  row.dataset = job.dataset_name;
  row.classifier = job.classifier_name;
  row.params = job.params_string();
  row.status = result.status;
  if (result.completed()) row.accuracy = format_accuracy(result.accuracy);
  return row;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string format_summary(std::vector<SummaryRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) { return a.canonical < b.canonical; });
  std::string out = "dataset,classifier,params,accuracy,status\n";
  for (const auto& r : rows) {
    out += csv_field(r.dataset) + ',' + csv_field(r.classifier) + ',' + csv_field(r.params) +
           ',' + (r.accuracy ? *r.accuracy : std::string()) + ',' + status_token(r.status) +
           '\n';
  }
  return out;
}

fs::path write_summary(const fs::path& dir, std::vector<SummaryRow> rows) {
  fs::path path = dir / kSummaryFile;
  fs::path tmp = path;
  tmp += ".tmp";
  write_file_synced(tmp, format_summary(std::move(rows)));
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw PersistenceError("cannot write " + path.string() + ": " + ec.message());
  return path;
}

}  // namespace flexdm
