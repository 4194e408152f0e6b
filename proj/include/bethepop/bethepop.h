#ifndef BETHEPOP_H
#define BETHEPOP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(BETHEPOP_BUILDING)
#define BETHEPOP_API __attribute__((visibility("default")))
#else
#define BETHEPOP_API
#endif

typedef enum {
  BETHE_OK = 0,
  BETHE_CHECK_FAILED = 1,
  BETHE_INPUT_ERROR = 2,
  BETHE_INTERNAL_ERROR = 3
} bethe_status;

typedef struct bethe_session bethe_session;

BETHEPOP_API bethe_session* bethe_session_new(void);
BETHEPOP_API void bethe_session_free(bethe_session* s);

/* Runs one subcommand on a JSON request. The report (UTF-8 JSON) and the
   error text stay valid until the next call on the same session. */
BETHEPOP_API bethe_status bethe_run(bethe_session* s, const char* subcommand, const char* request_json);
BETHEPOP_API const char* bethe_report(const bethe_session* s);
BETHEPOP_API const char* bethe_last_error(const bethe_session* s);
/* error code name of the last input error, e.g. "InvalidType"; "" if none */
BETHEPOP_API const char* bethe_last_error_code(const bethe_session* s);

/* NULL-terminated list of subcommand names */
BETHEPOP_API const char* const* bethe_subcommands(void);
BETHEPOP_API const char* bethe_version(void);

#ifdef __cplusplus
}
#endif

#endif
