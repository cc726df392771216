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

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "job_id.hpp"
#include "planner.hpp"

namespace flexdm {

class PersistenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kJournalFile = "journal.tsv";
inline constexpr const char* kSummaryFile = "summary.csv";
inline constexpr const char* kResultSuffix = ".result";

std::filesystem::path result_path(const std::filesystem::path& dir, const std::string& job_id);

// Text of a <job_id>.result file. Failed jobs carry "status: FAILED" and the
// error instead of an accuracy line.
std::string format_result(const Job& job, const EvalResult& result);

// Writes <job_id>.result through a temp file and rename, so a reader sees the old
// file or the complete new one. `before_rename` exists for failure injection.
std::filesystem::path write_result(const std::filesystem::path& dir, const Job& job,
                                   const EvalResult& result,
                                   const std::function<void()>& before_rename = {});

// What a result file says about its job; enough to rebuild a summary row.
struct StoredResult {
  JobStatus status = JobStatus::kCompleted;
  std::optional<double> accuracy;  // parsed from the 4-decimal text
  std::string accuracy_text;
  std::string message;
};

std::optional<StoredResult> read_result(const std::filesystem::path& dir,
                                        const std::string& job_id);

struct JournalEntry {
  std::string job_id;
  JobStatus status = JobStatus::kCompleted;
  double seconds = 0.0;
};

// "<job_id>\t<COMPLETED|FAILED>\t<seconds, 3 decimals>\n"
std::string format_journal_line(const JournalEntry& entry);

// Append-only, one fsync'd line per finished job.
class Journal {
 public:
  // Creates the file if needed; a torn trailing line is cut off first so new
  // lines never glue onto it.
  explicit Journal(const std::filesystem::path& dir);
  ~Journal();
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  void append(const JournalEntry& entry);
  std::size_t lines_written() const { return written_; }

 private:
  int fd_ = -1;
  std::size_t written_ = 0;
};

struct JournalState {
  std::vector<JournalEntry> entries;        // file order
  std::map<std::string, JobStatus> latest;  // last status per job id
  std::vector<std::string> warnings;
};

// Missing journal -> empty state. A torn final line is skipped with a warning;
// any earlier malformed line throws PersistenceError.
JournalState load_journal(const std::filesystem::path& dir);

// Ids whose latest status is COMPLETED and whose result file exists.
std::set<std::string> load_completed(const std::filesystem::path& dir,
                                     std::vector<std::string>* warnings = nullptr);

struct SummaryRow {
  std::string canonical;  // sort key, not written
  std::string dataset;
  std::string classifier;
  std::string params;
  std::optional<std::string> accuracy;  // 4 decimals; empty for failed jobs
  JobStatus status = JobStatus::kCompleted;
};

SummaryRow summary_row(const Job& job, const EvalResult& result);
std::string format_summary(std::vector<SummaryRow> rows);
std::filesystem::path write_summary(const std::filesystem::path& dir,
                                    std::vector<SummaryRow> rows);

std::string format_accuracy(double accuracy);
const char* status_token(JobStatus status);

}  // namespace flexdm
