from loguru import logger

# library modules stay quiet until an entry point configures a sink
logger.disable("src")
