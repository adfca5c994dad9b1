from django.db import models


class Appointment(models.Model):
    patient_name = models.CharField(max_length=80)
    doctor = models.CharField(max_length=80)
    scheduled_at = models.DateTimeField()

    class Meta:
        db_table = "appointments"
