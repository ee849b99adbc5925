from .ReportService import GeneralReportService, IReportService, emit, load_records

__all__ = ["IReportService", "GeneralReportService", "emit", "load_records"]
