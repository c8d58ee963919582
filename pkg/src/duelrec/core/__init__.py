"""Settings, logging, errors and instrumentation."""
