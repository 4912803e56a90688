#pragma once

#include <string>
#include <vector>

#include "basket/clustering.hpp"
#include "basket/summaries.hpp"
#include "basket/trial.hpp"

namespace basket {

enum class DataFormat { wide, long_format };

DataFormat data_format_from_string(const std::string& s);

// Reads trial data from a CSV file. Wide format: one row per basket with
// columns basket, responders, evaluable. Long format: one row per patient
// with columns basket, responder (0/1); baskets keep first-appearance order.
// Headers are case-insensitive and may come in any order; extra columns are
// ignored. Errors carry the file name and line number.
TrialData ingest_csv(const std::string& path, DataFormat format);

// Parses a symmetric prior-inclusion matrix from a headerless J x J numeric
// CSV grid.
Matrix prior_matrix_from_csv(const std::string& path, int baskets);

// Lower-triangle heat map (diagonal included) of a symmetric probability
// matrix, annotated with two-decimal values. Deterministic output: every
// coordinate is integral and every color channel is rounded the same way on
// every platform.
std::string exchangeogram_svg(const Matrix& matrix, const std::vector<std::string>& names);

// Kernel density curves of every basket and cluster posterior, as CSV rows
// entity_type,entity_name,x,density with grid_points rows per entity.
std::string densities_csv(const MemFit& fit, const ClusterAssignment& assignment,
                          int grid_points = 512);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace basket
