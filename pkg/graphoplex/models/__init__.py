from graphoplex.models.common import SCHEMA_VERSION, BasisDocument, BasisListing, ClassEntry, Document, Window
from graphoplex.models.graphs import GraphDocument, OrientationDocument, VertexDocument
from graphoplex.models.groups import GroupTableFile, GroupValidationReport
from graphoplex.models.reports import Failure, VerificationReport, VerificationRun
from graphoplex.models.run import RunConfig
from graphoplex.models.tables import BettiRow, BettiTable, MatrixDocument, MatrixEntry, MatrixListing

__all__ = [
    "SCHEMA_VERSION", "BasisDocument", "BasisListing", "ClassEntry", "Document", "Window",
    "GraphDocument", "OrientationDocument", "VertexDocument",
    "GroupTableFile", "GroupValidationReport",
    "Failure", "VerificationReport", "VerificationRun", "RunConfig",
    "BettiRow", "BettiTable", "MatrixDocument", "MatrixEntry", "MatrixListing",
]
