from functools import lru_cache
from typing import Annotated, Iterator

from fastapi import Depends
from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

try:
    from utils.logger import get_logger
    from utils.settings import get_settings
except ImportError:
    from ..utils.logger import get_logger
    from ..utils.settings import get_settings

logger = get_logger()

Base = declarative_base()


@lru_cache(maxsize=None)
def get_engine(database_url: str = "") -> Engine:
    """Engine for database_url (DATABASE_URL when empty), tables created on first use."""
    url = database_url or get_settings().database_url
    scheme = url.split("://", 1)[0]
    logger.info(f"Creating database engine ({scheme})")
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    engine = create_engine(url, pool_pre_ping=True, connect_args=connect_args, echo=False)

    # register tables before create_all
    try:
        from Schema.RunRecord import RunRecordRow  # noqa: F401
    except ImportError:
        from ..Schema.RunRecord import RunRecordRow  # noqa: F401

    try:
        Base.metadata.create_all(bind=engine)
        logger.info("Database tables created/verified successfully")
    except Exception as table_error:
        logger.error(f"Error creating tables: {str(table_error)}", exc_info=True)
        raise
    return engine


def get_session(database_url: str = "") -> Session:
    return sessionmaker(autoflush=False, bind=get_engine(database_url))()


def get_db() -> Iterator[Session]:
    """Dependency function to get database session."""
    db = get_session()
    try:
        yield db
    except Exception as e:
        logger.error(f"Error occurred during database session: {str(e)}", exc_info=True)
        raise
    finally:
        db.close()


DBSession = Annotated[Session, Depends(get_db)]
