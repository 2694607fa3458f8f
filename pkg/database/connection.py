from contextlib import contextmanager
from typing import Iterator, Optional

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, sessionmaker
from config import get_settings

SessionLocal = sessionmaker(autocommit=False, autoflush=False)

_engine: Optional[Engine] = None
_bound_url: Optional[str] = None

def get_engine() -> Engine:
    """Engine for the configured database URL; rebuilt when the setting changes"""
    global _engine, _bound_url
    database_url = get_settings().database_url
    if _engine is None or database_url != _bound_url:
        # SQLite connections are used from the command-line process only
        connect_args = {"check_same_thread": False} if database_url.startswith("sqlite") else {}
        if _engine is not None:
            _engine.dispose()
        _engine = create_engine(database_url, connect_args=connect_args)
        _bound_url = database_url
        SessionLocal.configure(bind=_engine)
    return _engine

@contextmanager
def session_scope() -> Iterator[Session]:
    """Yield a session, commit on success, roll back on error and close"""
    get_engine()
    db = SessionLocal()
    try:
        yield db
        db.commit()
    except Exception:
        db.rollback()
        raise
    finally:
        db.close()
