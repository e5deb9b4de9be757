#ifndef SORTIE_H
#define SORTIE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SortieStatus {
  SORTIE_STATUS_OK = 0,
  SORTIE_STATUS_NULL_ARGUMENT = 1,
  SORTIE_STATUS_INVALID_UTF8 = 2,
  SORTIE_STATUS_INVALID_SCENARIO = 3,
  SORTIE_STATUS_INFEASIBLE = 4,
  SORTIE_STATUS_NODE_LIMIT = 5,
  SORTIE_STATUS_SOLVER_FAILURE = 6,
  SORTIE_STATUS_INVALID_PLAN = 7,
  SORTIE_STATUS_OUT_OF_RANGE = 8,
  SORTIE_STATUS_PANIC = 9,
} SortieStatus;

typedef enum SortieObjective {
  SORTIE_OBJECTIVE_TOTAL_FLIGHT_TIME = 0,
  SORTIE_OBJECTIVE_WEIGHTED_MAKESPAN = 1,
  SORTIE_OBJECTIVE_SURVIVORS = 2,
} SortieObjective;

typedef enum SortieTask {
  SORTIE_TASK_CLASSIFY = 1,
  SORTIE_TASK_ATTACK = 2,
  SORTIE_TASK_VERIFY = 3,
} SortieTask;

/**
 * Opaque scenario handle.
 */
typedef struct SortieScenario SortieScenario;

/**
 * Opaque handle to an optimal solution.
 */
typedef struct SortieSolution SortieSolution;

/**
 * Model size for one scenario and objective.
 */
typedef struct SortieCensus {
  size_t binary;
  size_t continuous;
  size_t equality;
  size_t inequality;
} SortieCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *sortie_last_error(void);

/**
 * Library version as a static string.
 */
const char *sortie_version(void);

/**
 * Parses and validates a scenario document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SortieStatus sortie_scenario_from_json(const char *json, struct SortieScenario **out);

/**
 * Releases a scenario. Null is ignored.
 *
 * # Safety
 * `scenario` must come from [`sortie_scenario_from_json`] and not be used
 * afterwards.
 */
void sortie_scenario_free(struct SortieScenario *scenario);

/**
 * Number of targets and vehicles.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SortieStatus sortie_scenario_dims(const struct SortieScenario *scenario,
                                       size_t *targets,
                                       size_t *vehicles);

/**
 * Variable and constraint counts of the model.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SortieStatus sortie_census(const struct SortieScenario *scenario,
                                enum SortieObjective objective,
                                struct SortieCensus *out);

/**
 * Solves to proven optimality. `node_limit == 0` keeps the default limit.
 * On [`SortieStatus::Infeasible`] and [`SortieStatus::NodeLimit`] no
 * solution is returned.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SortieStatus sortie_solve(const struct SortieScenario *scenario,
                               enum SortieObjective objective,
                               uint64_t node_limit,
                               struct SortieSolution **out);

/**
 * Releases a solution. Null is ignored.
 *
 * # Safety
 * `solution` must come from [`sortie_solve`] and not be used afterwards.
 */
void sortie_solution_free(struct SortieSolution *solution);

/**
 * Objective value; survivors are reported as a count.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SortieStatus sortie_solution_objective(const struct SortieSolution *solution, double *out);

/**
 * Time at which `task` is performed on `target` (1-based).
 *
 * # Safety
 * All pointers must be valid.
 */
enum SortieStatus sortie_solution_task_time(const struct SortieSolution *solution,
                                            size_t target,
                                            enum SortieTask task,
                                            double *out);

/**
 * Plan JSON of the solution.
 *
 * # Safety
 * All pointers must be valid. Release the string with
 * [`sortie_string_free`].
 */
enum SortieStatus sortie_solution_plan_json(const struct SortieSolution *solution, char **out);

/**
 * The model in CPLEX LP format.
 *
 * # Safety
 * All pointers must be valid. Release the string with
 * [`sortie_string_free`].
 */
enum SortieStatus sortie_export_lp(const struct SortieScenario *scenario,
                                   enum SortieObjective objective,
                                   char **out);

/**
 * Checks a plan against a scenario and reports the number of violated
 * rules. A well-formed plan with violations still returns
 * [`SortieStatus::Ok`].
 *
 * # Safety
 * All pointers must be valid; `plan_json` must be NUL-terminated.
 */
enum SortieStatus sortie_check_plan(const struct SortieScenario *scenario,
                                    const char *plan_json,
                                    size_t *violations);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void sortie_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SORTIE_H */
